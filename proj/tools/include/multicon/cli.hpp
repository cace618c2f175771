// Copyright 2026 The multicon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace multicon::cli {

/// Parsed command line. Paths may be "-" for stdin (at most one per run).
struct RunConfig {
  std::string command;  // analyze | synthesize | gains | simulate | example

  std::string graph;
  std::string layer;
  std::string partition;
  std::string out_dir;

  std::string mode = "add";       // add | signed | signed-connected | constructive
  std::string model = "single";   // single | second
  std::string coords = "state";   // state | error
  std::string x0 = "random";
  std::string v0 = "random";
  std::string csv;
  std::string report;

  double a = 0.0;
  double b = 0.0;
  std::optional<double> k1;
  std::optional<double> k2;
  double dt = 0.01;
  double horizon = 100.0;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  std::uint64_t node_limit = 10'000'000;
  std::size_t stride = 1;
  int example = 0;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kInputError = 2;

/// Executes one subcommand. Results go to `out`, diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace multicon::cli
