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
#include <vector>

#include "multicon/graph.hpp"
#include "multicon/matrix.hpp"
#include "multicon/partition.hpp"

namespace multicon {

/// Reach-ordered block form of a Laplacian.
///
/// Nodes are permuted as H_1, ..., H_mu, C (each part in ascending order).
/// In that order the Laplacian is block lower triangular:
///
///     [ L_1              0 ]
///     [      ...           ]
///     [           L_mu   0 ]
///     [ M_1  ...  M_mu   M ]
struct ReachDecomposition {
  std::vector<Node> order;              // position -> original node
  std::vector<NodeSet> exclusive;       // H_1..H_mu
  NodeSet common;                       // C
  IntMatrix permuted;                   // T^T L T
  std::vector<IntMatrix> blocks;        // L_i, n_i x n_i
  std::vector<IntMatrix> couplings;     // M_i, n_C x n_i
  IntMatrix common_block;               // M, n_C x n_C

  std::size_t reach_count() const noexcept { return exclusive.size(); }
};

ReachDecomposition block_decompose(const IntMatrix& laplacian);

/// One vector per exclusive part, each of length n_C, solving
/// M_i 1 + M gamma_i = 0 exactly. Empty when C is empty.
std::vector<std::vector<Rational>> gamma_vectors(const ReachDecomposition& d);

struct CoarsestEep {
  Partition pi_star;                          // H-cells, then C-cells
  std::vector<std::vector<Rational>> gamma;   // gamma_1..gamma_mu
  std::size_t mu = 0;
  std::size_t h = 0;                          // number of C-cells
  ReachDecomposition decomposition;
};

/// Exclusive parts plus the common part grouped by equal gamma tuples; the
/// single-cell partition when the graph has one reach. These are the groups
/// x' = -L x converges to. The partition is usually an EEP, but not always:
/// for 1 -> 3, 2 -> 3, 3 -> 4 it is {1 | 2 | 3,4} and only node 3 hears
/// from node 1. Check with is_eep before relying on it.
CoarsestEep coarsest_eep(const IntMatrix& laplacian);

}  // namespace multicon
