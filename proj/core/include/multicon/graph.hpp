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

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "multicon/matrix.hpp"

namespace multicon {

/// 0-based node index. Everything user-facing (CLI, files, messages) is
/// 1-based; conversion happens at the I/O boundary.
using Node = std::size_t;

/// Sorted, duplicate-free set of nodes.
using NodeSet = std::vector<Node>;

/// Directed link `from -> to`: node `to` receives information from `from`.
struct Edge {
  Node from = 0;
  Node to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple digraph (no self-loops, no multi-edges).
class Digraph {
 public:
  /// Throws InvalidGraph on a self-loop or an endpoint outside [0, n).
  /// Duplicate edges collapse.
  explicit Digraph(std::size_t n, std::vector<Edge> edges = {});

  /// Inverse of `laplacian`: L(i, j) = -1 means edge j -> i.
  static Digraph from_laplacian(const IntMatrix& laplacian);

  std::size_t size() const noexcept { return n_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool has_edge(Node from, Node to) const;
  std::span<const Node> out_neighbors(Node v) const { return out_[v]; }
  std::span<const Node> in_neighbors(Node v) const { return in_[v]; }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;  // sorted
  std::vector<std::vector<Node>> out_;
  std::vector<std::vector<Node>> in_;
};

/// a(i, j) = 1 iff edge j -> i.
IntMatrix adjacency(const Digraph& g);

/// In-degree Laplacian D - A.
IntMatrix laplacian(const Digraph& g);

/// Throws InvalidGraph unless `m` is square with zero row sums and
/// off-diagonal entries in {-1, 0}.
void validate_laplacian(const IntMatrix& m);

/// `v` together with every node reachable from it along directed edges.
NodeSet reachable_set(const Digraph& g, Node v);

/// The maximal reachable sets, each once, ordered by smallest member.
std::vector<NodeSet> reaches(const Digraph& g);

struct ReachParts {
  std::vector<NodeSet> exclusive;  // H_1..H_mu, same order as the reaches
  NodeSet common;                  // C
};

ReachParts exclusive_and_common(std::span<const NodeSet> reaches);

/// Nodes whose reachable set is a reach, i.e. the members of source
/// strongly connected components.
NodeSet rooted_nodes(const Digraph& g);

std::size_t weak_component_count(const Digraph& g);
bool is_weakly_connected(const Digraph& g);

/// Weakly connected with a node that reaches every other node.
bool is_rooted(const Digraph& g);

}  // namespace multicon
