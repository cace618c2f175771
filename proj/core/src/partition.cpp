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

#include "multicon/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace multicon {

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

void require_square_match(const IntMatrix& l, const IntMatrix& p) {
  if (!l.square() || l.rows() != p.rows())
    throw DimensionMismatch("Laplacian is " + std::to_string(l.rows()) + "x" + std::to_string(l.cols()) +
                            " but the characteristic matrix has " + std::to_string(p.rows()) + " rows");
}

}  // namespace

Partition::Partition(std::size_t n, std::vector<NodeSet> cells) : cells_(std::move(cells)), cell_of_(n, kUnassigned) {
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    auto& cell = cells_[k];
    if (cell.empty()) throw InvalidPartition("cell " + std::to_string(k + 1) + " is empty");
    std::sort(cell.begin(), cell.end());
    for (Node v : cell) {
      if (v >= n)
        throw InvalidPartition("node " + std::to_string(v + 1) + " is outside 1.." + std::to_string(n));
      if (cell_of_[v] != kUnassigned)
        throw InvalidPartition("node " + std::to_string(v + 1) + " appears in more than one cell");
      cell_of_[v] = k;
    }
  }
  for (Node v = 0; v < n; ++v)
    if (cell_of_[v] == kUnassigned) throw InvalidPartition("node " + std::to_string(v + 1) + " is in no cell");
}

Partition Partition::singletons(std::size_t n) {
  std::vector<NodeSet> cells(n);
  for (Node v = 0; v < n; ++v) cells[v] = {v};
  return Partition(n, std::move(cells));
}

Partition Partition::whole(std::size_t n) {
  NodeSet all(n);
  std::iota(all.begin(), all.end(), Node{0});
  return Partition(n, {all});
}

Partition Partition::canonical() const {
  auto cells = cells_;
  std::sort(cells.begin(), cells.end(), [](const NodeSet& a, const NodeSet& b) { return a.front() < b.front(); });
  return Partition(node_count(), std::move(cells));
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.node_count() != node_count()) return false;
  for (const auto& cell : cells_) {
    const std::size_t target = coarser.cell_of(cell.front());
    for (Node v : cell)
      if (coarser.cell_of(v) != target) return false;
  }
  return true;
}

bool operator==(const Partition& a, const Partition& b) {
  return a.node_count() == b.node_count() && a.canonical().cells_ == b.canonical().cells_;
}

std::string to_string(const Partition& p) {
  std::string out = "{";
  for (std::size_t k = 0; k < p.cell_count(); ++k) {
    if (k > 0) out += " | ";
    const auto& cell = p.cell(k);
    for (std::size_t i = 0; i < cell.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(cell[i] + 1);
    }
  }
  return out + "}";
}

IntMatrix characteristic_matrix(const Partition& p) {
  IntMatrix m(p.node_count(), p.cell_count());
  for (std::size_t k = 0; k < p.cell_count(); ++k)
    for (Node v : p.cell(k)) m(v, k) = 1;
  return m;
}

RatMatrix projector(const IntMatrix& characteristic) {
  const std::size_t n = characteristic.rows();
  const std::size_t m = characteristic.cols();
  std::vector<std::int64_t> size(m, 0);
  std::vector<std::size_t> cell(n, kUnassigned);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (characteristic(i, k) == 0) continue;
      if (characteristic(i, k) != 1 || cell[i] != kUnassigned)
        throw InvalidPartition("row " + std::to_string(i + 1) + " of the characteristic matrix is not a unit row");
      cell[i] = k;
      ++size[k];
    }
    if (cell[i] == kUnassigned)
      throw InvalidPartition("row " + std::to_string(i + 1) + " of the characteristic matrix is empty");
  }
  // (P (P^T P)^-1 P^T)_{ij} = 1/|C| when i and j share cell C.
  RatMatrix ph(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (cell[i] == cell[j]) ph(i, j) = Rational(1, static_cast<unsigned long>(size[cell[i]]));
  return ph;
}

RatMatrix quotient_laplacian(const IntMatrix& laplacian, const IntMatrix& characteristic) {
  require_square_match(laplacian, characteristic);
  const RatMatrix p = to_rational(characteristic);
  const RatMatrix pt = transpose(p);
  RatMatrix ptp_inv = pt * p;
  for (std::size_t k = 0; k < ptp_inv.rows(); ++k) {
    if (ptp_inv(k, k) == 0) throw InvalidPartition("cell " + std::to_string(k + 1) + " is empty");
    ptp_inv(k, k) = 1 / ptp_inv(k, k);
  }
  return ptp_inv * pt * to_rational(laplacian) * p;
}

bool is_eep(const IntMatrix& laplacian, const Partition& p) {
  const IntMatrix pm = characteristic_matrix(p);
  require_square_match(laplacian, pm);
  const RatMatrix ph = projector(pm);
  const RatMatrix l = to_rational(laplacian);
  const RatMatrix lph = l * ph;
  return lph == ph * lph;
}

bool is_eep_by_counts(const IntMatrix& laplacian, const Partition& p) {
  if (!laplacian.square() || laplacian.rows() != p.node_count())
    throw DimensionMismatch("Laplacian and partition sizes differ");
  const std::size_t m = p.cell_count();
  for (std::size_t l = 0; l < m; ++l) {
    const auto& cell = p.cell(l);
    for (std::size_t k = 0; k < m; ++k) {
      if (k == l) continue;
      auto count = [&](Node i) {
        std::int64_t c = 0;
        for (Node j : p.cell(k)) c -= laplacian(i, j);
        return c;
      };
      const std::int64_t first = count(cell.front());
      for (Node i : cell)
        if (count(i) != first) return false;
    }
  }
  return true;
}

RatMatrix r_matrix(const Partition& p) {
  const std::size_t n = p.node_count();
  RatMatrix r(n, n);
  for (const auto& cell : p.cells()) {
    const Rational inv(1, static_cast<unsigned long>(cell.size()));
    for (Node i : cell)
      for (Node j : cell) r(i, j) = (i == j ? Rational(1) : Rational(0)) - inv;
  }
  return r;
}

}  // namespace multicon
