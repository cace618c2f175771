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

#include <iosfwd>
#include <string>
#include <string_view>

#include "multicon/graph.hpp"
#include "multicon/partition.hpp"
#include "multicon/sim.hpp"
#include "multicon/synthesis.hpp"

namespace multicon {

// All formats are 1-based on the wire.

/// Edge list: one `u v` pair (edge u -> v) per line, `#` comments, blank
/// lines ignored. An optional `n <count>` line fixes the node count;
/// otherwise it is the largest endpoint.
Digraph parse_edge_list(std::string_view text);

/// `{ "n": 3, "edges": [[1, 2], [2, 3]] }`
Digraph parse_graph_json(std::string_view text);

/// JSON when the first non-blank character is `{`, edge list otherwise.
Digraph parse_graph(std::string_view text);

/// `{ "cells": [[1, 4], [2, 3]] }`
Partition parse_partition_json(std::string_view text, std::size_t n);

/// `+ u v` adds u -> v, `- u v` removes it; `#` comments allowed.
ControlLayer parse_layer_diff(std::string_view text, std::size_t n, LayerMode mode);

std::string format_edge_list(const Digraph& g);
std::string format_graph_json(const Digraph& g);
std::string format_partition_json(const Partition& p);
std::string format_layer_diff(const ControlLayer& layer);
std::string format_matrix(const IntMatrix& m);

/// Original edges solid, added edges labeled "+" (red), removed edges
/// labeled "-" (green, dashed).
std::string format_dot(const Digraph& original, const ControlLayer& layer);

/// Header `t,x_1..x_N[,v_1..v_N]`, one row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

/// Reads a whole file, or stdin for "-". Throws ParseError naming the path.
std::string read_text(const std::string& path);
void write_text(const std::string& path, std::string_view text);

}  // namespace multicon
