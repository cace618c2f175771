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

#include <string>
#include <vector>

#include "multicon/matrix.hpp"
#include "multicon/partition.hpp"
#include "multicon/sim.hpp"
#include "multicon/synthesis.hpp"

namespace multicon {

/// Built-in benchmark instances 1..6.
///
/// Instances 1 and 2 are the 8- and 10-agent single-integrator problems;
/// 3 and 4 reuse them with second-order agents (a = 1, b = 0.8); 5 and 6
/// rerun instance 1 with signed layers. Only the controlled Laplacians and
/// the added links are published, so each original graph is the controlled
/// Laplacian minus the added links.
struct BuiltinExample {
  int id = 0;
  std::string summary;
  IntMatrix original;                     // L
  Partition target;                       // desired clusters
  LayerMode mode = LayerMode::AddOnly;
  IntMatrix published_total;              // L + L^u, empty when not published
  std::vector<LinkChange> published_changes;  // links named in the text, possibly a subset
  bool second_order = false;
  std::vector<SecondOrderGains> gains;    // first entry is inside the gain region
};

/// Throws InvalidNode for ids outside 1..6.
BuiltinExample builtin_example(int id);

}  // namespace multicon
