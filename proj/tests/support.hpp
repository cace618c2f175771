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

// Shared fixtures and brute-force oracles for the test binaries.

#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "multicon/graph.hpp"
#include "multicon/partition.hpp"
#include "multicon/synthesis.hpp"

namespace multicon::testing {

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Digraph random_digraph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Node u = 0; u < n; ++u)
    for (Node v = 0; v < n; ++v)
      if (u != v && coin(rng)) edges.push_back({u, v});
  return Digraph(n, std::move(edges));
}

/// Uniform assignment into exactly `k` non-empty cells (k <= n).
inline Partition random_partition(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<Node> order(n);
  for (Node v = 0; v < n; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<NodeSet> cells(k);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i < k ? i : uniform_index(rng, 0, k - 1);
    cells[c].push_back(order[i]);
  }
  for (auto& c : cells) std::sort(c.begin(), c.end());
  return Partition(n, std::move(cells));
}

/// Partition with at most one of `rooted` per cell: every rooted node opens
/// its own cell, the rest join a random cell or open a new one.
inline Partition random_rooted_target(std::mt19937_64& rng, std::size_t n, const NodeSet& rooted) {
  std::vector<NodeSet> cells;
  std::vector<bool> is_root(n, false);
  for (Node r : rooted) {
    is_root[r] = true;
    cells.push_back({r});
  }
  for (Node v = 0; v < n; ++v) {
    if (is_root[v]) continue;
    const std::size_t pick = uniform_index(rng, 0, cells.size());
    if (pick == cells.size()) cells.push_back({v});
    else cells[pick].push_back(v);
  }
  for (auto& c : cells) std::sort(c.begin(), c.end());
  return Partition(n, std::move(cells));
}

/// EEP check through in-neighbour counts, independent of the projector
/// algebra: every pair of distinct cells sees constant counts per row.
inline bool eep_by_in_counts(const IntMatrix& l, const Partition& p) {
  for (std::size_t k = 0; k < p.cell_count(); ++k) {
    for (const auto& cell : p.cells()) {
      std::optional<std::int64_t> seen;
      for (Node i : cell) {
        if (p.cell_of(i) == k) break;
        std::int64_t count = 0;
        for (Node j : p.cell(k)) count += l(i, j) == -1 ? 1 : 0;
        if (seen && *seen != count) return false;
        seen = count;
      }
    }
  }
  return true;
}

struct OracleResult {
  std::size_t cost = 0;
  std::vector<std::uint8_t> y;  // lexicographically smallest optimum, h order over all N*N entries
};

/// Exhaustive search over sign-feasible layers by increasing cost. Nullopt
/// when no layer of any cost works.
inline std::optional<OracleResult> brute_force_layer(const IntMatrix& l, const Partition& target, LayerMode mode) {
  const std::size_t n = l.rows();
  struct Var {
    Node row, col;
    std::int64_t delta;  // change of L(row, col)
  };
  std::vector<Var> vars;
  for (Node i = 0; i < n; ++i)
    for (Node j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool present = l(i, j) == -1;
      if (!present) vars.push_back({i, j, -1});
      else if (mode != LayerMode::AddOnly) vars.push_back({i, j, +1});
    }

  const Digraph base = Digraph::from_laplacian(l);
  const std::size_t base_components = weak_component_count(base);
  // ordered (receiver cell, source cell) pairs joined by an original link
  std::set<std::pair<std::size_t, std::size_t>> linked;
  for (const auto& e : base.edges())
    if (target.cell_of(e.from) != target.cell_of(e.to)) linked.insert({target.cell_of(e.to), target.cell_of(e.from)});

  auto feasible = [&](const IntMatrix& m) {
    if (!eep_by_in_counts(m, target)) return false;
    if (mode != LayerMode::SignedConnected) return true;
    const Digraph g = Digraph::from_laplacian(m);
    if (weak_component_count(g) > base_components) return false;
    for (const auto& [r, s] : linked) {
      bool any = false;
      for (Node i : target.cell(r))
        for (Node j : target.cell(s)) any = any || m(i, j) == -1;
      if (!any) return false;
    }
    return true;
  };

  const std::size_t v = vars.size();
  for (std::size_t k = 0; k <= v; ++k) {
    std::optional<std::vector<std::uint8_t>> best;
    std::vector<std::uint8_t> pick(v, 0);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), 1);
    do {
      IntMatrix m = l;
      for (std::size_t q = 0; q < v; ++q) {
        if (!pick[q]) continue;
        m(vars[q].row, vars[q].col) += vars[q].delta;
        m(vars[q].row, vars[q].row) -= vars[q].delta;
      }
      if (!feasible(m)) continue;
      std::vector<std::uint8_t> y(n * n, 0);
      for (std::size_t q = 0; q < v; ++q)
        if (pick[q]) y[vars[q].row * n + vars[q].col] = 1;
      if (!best || y < *best) best = std::move(y);
    } while (std::next_permutation(pick.begin(), pick.end()));
    if (best) return OracleResult{k, std::move(*best)};
  }
  return std::nullopt;
}

/// The layer's y vector over all N*N entries in h = row*N + col order.
inline std::vector<std::uint8_t> layer_bits(const ControlLayer& layer) {
  const std::size_t n = layer.size();
  std::vector<std::uint8_t> y(n * n, 0);
  for (const auto& c : layer.changes()) y[c.to * n + c.from] = 1;
  return y;
}

/// Eigen's general solver, used as an independent eigenvalue oracle.
inline std::vector<std::complex<double>> oracle_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<std::complex<double>> out(es.eigenvalues().begin(), es.eigenvalues().end());
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

inline std::vector<std::complex<double>> reals(std::initializer_list<double> xs) {
  std::vector<std::complex<double>> out;
  for (double x : xs) out.emplace_back(x, 0.0);
  return out;
}

inline Partition one_based(std::size_t n, std::vector<NodeSet> cells) {
  for (auto& c : cells)
    for (auto& v : c) --v;
  return Partition(n, std::move(cells));
}

}  // namespace multicon::testing
