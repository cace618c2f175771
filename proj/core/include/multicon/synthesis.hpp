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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "multicon/graph.hpp"
#include "multicon/matrix.hpp"
#include "multicon/partition.hpp"

namespace multicon {

enum class LayerMode {
  AddOnly,          // links may only be added
  Signed,           // links may be added or removed
  SignedConnected,  // as Signed, but inter-cell connections and weak connectivity survive
};

std::string_view to_string(LayerMode mode);

/// Accepts "add", "signed" and "signed-connected".
std::optional<LayerMode> parse_layer_mode(std::string_view text);

/// One link touched by a control layer.
struct LinkChange {
  Node from = 0;
  Node to = 0;
  bool added = true;

  friend bool operator==(const LinkChange&, const LinkChange&) = default;
};

/// Signed Laplacian delta L^u: -1 off-diagonal adds link col -> row, +1
/// removes it; the diagonal keeps rows summing to zero.
struct ControlLayer {
  IntMatrix delta;
  LayerMode mode = LayerMode::AddOnly;

  static ControlLayer empty(std::size_t n, LayerMode mode = LayerMode::AddOnly);
  static ControlLayer from_changes(std::size_t n, std::span<const LinkChange> changes, LayerMode mode);

  std::size_t size() const noexcept { return delta.rows(); }
  /// Number of links added or removed.
  std::size_t cost() const;
  /// Ordered by (to, from), i.e. by variable index h.
  std::vector<LinkChange> changes() const;
};

/// Throws SignViolation when `layer` breaks its mode's rules against the
/// adjacency of `laplacian` (adding an existing link, removing a missing one,
/// removing in AddOnly, or a diagonal that does not balance its row).
void validate_layer(const IntMatrix& laplacian, const ControlLayer& layer);

struct AppliedLayer {
  IntMatrix laplacian;  // L + L^u
  Digraph graph;
};

AppliedLayer apply_layer(const IntMatrix& laplacian, const ControlLayer& layer);

/// Binary variable y_h for the off-diagonal entry (row, col), h = row*N + col.
/// y_h = 1 sets L^u(row, col) = -sign: sign +1 adds a link, -1 removes one.
struct BipVariable {
  Node row = 0;
  Node col = 0;
  int sign = 1;
  std::size_t h = 0;
};

/// Sparse integer row: sum of coeff * y[var] compared against rhs.
struct LinearRow {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;  // (variable index, coefficient)
  std::int64_t rhs = 0;

  friend auto operator<=>(const LinearRow&, const LinearRow&) = default;
};

/// Keeps at least one link from cell `source` into cell `receiver`:
/// row.terms * y >= row.rhs.
struct CellPairConstraint {
  std::size_t receiver = 0;
  std::size_t source = 0;
  LinearRow row;
};

struct BipProblem {
  IntMatrix base;
  Partition target;
  LayerMode mode = LayerMode::AddOnly;
  std::vector<BipVariable> variables;        // ascending h
  std::vector<LinearRow> equalities;         // row.terms * y == row.rhs
  std::vector<CellPairConstraint> at_least;  // SignedConnected only
  /// SignedConnected only: the result may not have more weakly connected
  /// components than the base graph. Checked on complete assignments.
  std::optional<std::size_t> max_weak_components;

  ControlLayer layer_from(std::span<const std::uint8_t> y) const;
};

/// Builds the vectorized EEP condition (L + L^u) P_H = P_H (L + L^u) P_H
/// over binary link variables, with the diagonal of L^u eliminated through
/// the zero-row-sum tie.
BipProblem build_bip(const IntMatrix& laplacian, const Partition& target, LayerMode mode);

struct SolveOptions {
  std::uint64_t node_limit = 10'000'000;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::size_t cost = 0;
};

/// Cost-minimal feasible layer; among optima the lexicographically smallest
/// y in h order. Throws Infeasible or BudgetExceeded.
ControlLayer solve_bip(const BipProblem& problem, const SolveOptions& options = {}, SolveStats* stats = nullptr);

/// Link-count formula n_l for the add-only constructive algorithm.
std::size_t constructive_link_count(const IntMatrix& laplacian, const Partition& target);

/// Add-only layer equalizing every node's in-count from every other cell to
/// the cell maximum; sources are the smallest-index eligible nodes.
ControlLayer constructive_add(const IntMatrix& laplacian, const Partition& target);

}  // namespace multicon
