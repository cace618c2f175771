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
#include <string>
#include <vector>

#include "multicon/graph.hpp"
#include "multicon/matrix.hpp"

namespace multicon {

/// Ordered list of disjoint, non-empty cells covering [0, n).
///
/// Members inside a cell are kept sorted; the cell order is whatever the
/// producer chose (the coarsest-EEP builder lists exclusive parts first).
/// Equality ignores cell order. `canonical()` orders cells by smallest
/// member.
class Partition {
 public:
  /// Throws InvalidPartition on empty, overlapping or non-covering cells.
  Partition(std::size_t n, std::vector<NodeSet> cells);

  static Partition singletons(std::size_t n);
  static Partition whole(std::size_t n);

  std::size_t node_count() const noexcept { return cell_of_.size(); }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  const std::vector<NodeSet>& cells() const noexcept { return cells_; }
  const NodeSet& cell(std::size_t k) const { return cells_.at(k); }
  std::size_t cell_of(Node v) const { return cell_of_.at(v); }

  Partition canonical() const;

  /// Every cell of `*this` lies inside a single cell of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b);

 private:
  std::vector<NodeSet> cells_;
  std::vector<std::size_t> cell_of_;
};

/// `{1,4 | 2,3 | ...}` with 1-based members.
std::string to_string(const Partition& p);

/// N x M binary membership matrix.
IntMatrix characteristic_matrix(const Partition& p);

/// P (P^T P)^-1 P^T.
RatMatrix projector(const IntMatrix& characteristic);

/// (P^T P)^-1 P^T L P.
RatMatrix quotient_laplacian(const IntMatrix& laplacian, const IntMatrix& characteristic);

/// Exact test of L P_H == P_H L P_H.
bool is_eep(const IntMatrix& laplacian, const Partition& p);

/// Degree characterization: for every pair of distinct cells (C_l, C_k),
/// all rows of C_l have the same number of in-neighbours in C_k.
bool is_eep_by_counts(const IntMatrix& laplacian, const Partition& p);

/// I - P_H, block-diagonal with I - (1/n_i) 11^T blocks.
RatMatrix r_matrix(const Partition& p);

}  // namespace multicon
