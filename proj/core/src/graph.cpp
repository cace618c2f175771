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

#include "multicon/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace multicon {

namespace {

std::string one_based(Node v) { return std::to_string(v + 1); }

// Reachability closure of every node, one bool row per source.
std::vector<std::vector<bool>> reach_closure(const Digraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> closure(n, std::vector<bool>(n, false));
  std::vector<Node> stack;
  for (Node s = 0; s < n; ++s) {
    auto& seen = closure[s];
    seen[s] = true;
    stack.assign(1, s);
    while (!stack.empty()) {
      const Node u = stack.back();
      stack.pop_back();
      for (Node w : g.out_neighbors(u)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return closure;
}

NodeSet members(const std::vector<bool>& mask) {
  NodeSet out;
  for (Node v = 0; v < mask.size(); ++v)
    if (mask[v]) out.push_back(v);
  return out;
}

}  // namespace

Digraph::Digraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), out_(n), in_(n) {
  if (n_ == 0) throw InvalidGraph("graph must have at least one node");
  for (const Edge& e : edges_) {
    if (e.from >= n_ || e.to >= n_)
      throw InvalidGraph("edge " + one_based(e.from) + " -> " + one_based(e.to) + " has an endpoint outside 1.." +
                         std::to_string(n_));
    if (e.from == e.to) throw InvalidGraph("self-loop on node " + one_based(e.from));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const Edge& e : edges_) {
    out_[e.from].push_back(e.to);
    in_[e.to].push_back(e.from);
  }
  for (auto& v : in_) std::sort(v.begin(), v.end());
}

Digraph Digraph::from_laplacian(const IntMatrix& l) {
  validate_laplacian(l);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < l.rows(); ++i)
    for (std::size_t j = 0; j < l.cols(); ++j)
      if (i != j && l(i, j) == -1) edges.push_back({j, i});
  return Digraph(l.rows(), std::move(edges));
}

bool Digraph::has_edge(Node from, Node to) const {
  if (from >= n_ || to >= n_) return false;
  return std::binary_search(in_[to].begin(), in_[to].end(), from);
}

IntMatrix adjacency(const Digraph& g) {
  IntMatrix a(g.size(), g.size());
  for (const Edge& e : g.edges()) a(e.to, e.from) = 1;
  return a;
}

IntMatrix laplacian(const Digraph& g) {
  IntMatrix l(g.size(), g.size());
  for (const Edge& e : g.edges()) {
    l(e.to, e.from) = -1;
    l(e.to, e.to) += 1;
  }
  return l;
}

void validate_laplacian(const IntMatrix& m) {
  if (!m.square() || m.rows() == 0) throw InvalidGraph("Laplacian must be a non-empty square matrix");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      sum += m(i, j);
      if (i != j && m(i, j) != 0 && m(i, j) != -1)
        throw InvalidGraph("Laplacian entry (" + one_based(i) + ", " + one_based(j) + ") = " +
                           std::to_string(m(i, j)) + " is not in {-1, 0}");
    }
    if (sum != 0) throw InvalidGraph("Laplacian row " + one_based(i) + " does not sum to zero");
  }
}

NodeSet reachable_set(const Digraph& g, Node v) {
  if (v >= g.size()) throw InvalidNode("node " + one_based(v) + " is outside 1.." + std::to_string(g.size()));
  std::vector<bool> seen(g.size(), false);
  std::vector<Node> stack{v};
  seen[v] = true;
  while (!stack.empty()) {
    const Node u = stack.back();
    stack.pop_back();
    for (Node w : g.out_neighbors(u)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return members(seen);
}

std::vector<NodeSet> reaches(const Digraph& g) {
  const auto closure = reach_closure(g);
  const std::size_t n = g.size();
  std::vector<NodeSet> out;
  for (Node v = 0; v < n; ++v) {
    // R(v) is maximal iff everything that reaches v is reachable from v.
    bool maximal = true;
    for (Node w = 0; w < n && maximal; ++w)
      if (closure[w][v] && !closure[v][w]) maximal = false;
    if (!maximal) continue;
    NodeSet r = members(closure[v]);
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const NodeSet& a, const NodeSet& b) { return a.front() < b.front(); });
  return out;
}

ReachParts exclusive_and_common(std::span<const NodeSet> reaches) {
  std::size_t n = 0;
  for (const auto& r : reaches)
    if (!r.empty()) n = std::max(n, r.back() + 1);
  std::vector<std::size_t> hits(n, 0);
  for (const auto& r : reaches)
    for (Node v : r) ++hits[v];

  ReachParts parts;
  for (const auto& r : reaches) {
    NodeSet h;
    std::copy_if(r.begin(), r.end(), std::back_inserter(h), [&](Node v) { return hits[v] == 1; });
    parts.exclusive.push_back(std::move(h));
  }
  for (Node v = 0; v < n; ++v)
    if (hits[v] > 1) parts.common.push_back(v);
  return parts;
}

NodeSet rooted_nodes(const Digraph& g) {
  const auto closure = reach_closure(g);
  NodeSet out;
  for (Node v = 0; v < g.size(); ++v) {
    bool maximal = true;
    for (Node w = 0; w < g.size() && maximal; ++w)
      if (closure[w][v] && !closure[v][w]) maximal = false;
    if (maximal) out.push_back(v);
  }
  return out;
}

std::size_t weak_component_count(const Digraph& g) {
  std::vector<Node> parent(g.size());
  std::iota(parent.begin(), parent.end(), Node{0});
  auto find = [&](Node v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = g.size();
  for (const Edge& e : g.edges()) {
    const Node a = find(e.from);
    const Node b = find(e.to);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

bool is_weakly_connected(const Digraph& g) { return weak_component_count(g) == 1; }

bool is_rooted(const Digraph& g) { return is_weakly_connected(g) && reaches(g).size() == 1; }

}  // namespace multicon
