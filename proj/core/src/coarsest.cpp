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

#include "multicon/coarsest.hpp"

#include <algorithm>

namespace multicon {

ReachDecomposition block_decompose(const IntMatrix& laplacian) {
  const Digraph g = Digraph::from_laplacian(laplacian);
  const auto all_reaches = reaches(g);
  ReachParts parts = exclusive_and_common(all_reaches);

  ReachDecomposition d;
  d.exclusive = std::move(parts.exclusive);
  d.common = std::move(parts.common);
  for (const auto& h : d.exclusive) d.order.insert(d.order.end(), h.begin(), h.end());
  d.order.insert(d.order.end(), d.common.begin(), d.common.end());
  if (d.order.size() != g.size()) throw InternalError("reach parts do not cover the node set");

  d.permuted = select<std::int64_t>(laplacian, d.order, d.order);

  // Upper block-rows must be zero outside their diagonal block.
  std::size_t offset = 0;
  for (const auto& h : d.exclusive) {
    for (std::size_t r = offset; r < offset + h.size(); ++r)
      for (std::size_t c = 0; c < d.order.size(); ++c)
        if ((c < offset || c >= offset + h.size()) && d.permuted(r, c) != 0)
          throw InternalError("exclusive part has an in-link from outside its block");
    d.blocks.push_back(select<std::int64_t>(laplacian, h, h));
    d.couplings.push_back(select<std::int64_t>(laplacian, d.common, h));
    offset += h.size();
  }
  d.common_block = select<std::int64_t>(laplacian, d.common, d.common);
  return d;
}

std::vector<std::vector<Rational>> gamma_vectors(const ReachDecomposition& d) {
  const std::size_t nc = d.common.size();
  const std::size_t mu = d.reach_count();
  if (nc == 0) return {};

  RatMatrix rhs(nc, mu);
  for (std::size_t i = 0; i < mu; ++i) {
    const IntMatrix& mi = d.couplings[i];
    for (std::size_t r = 0; r < nc; ++r) {
      std::int64_t row_sum = 0;
      for (std::size_t c = 0; c < mi.cols(); ++c) row_sum += mi(r, c);
      rhs(r, i) = Rational(static_cast<long>(-row_sum));
    }
  }
  const auto solution = solve(to_rational(d.common_block), rhs);
  if (!solution) throw InternalError("grounded common-part block is singular");

  std::vector<std::vector<Rational>> gamma(mu, std::vector<Rational>(nc));
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t r = 0; r < nc; ++r) gamma[i][r] = (*solution)(r, i);
  return gamma;
}

CoarsestEep coarsest_eep(const IntMatrix& laplacian) {
  ReachDecomposition d = block_decompose(laplacian);
  const std::size_t n = laplacian.rows();
  const std::size_t mu = d.reach_count();

  if (mu == 1) {
    return CoarsestEep{Partition::whole(n), {}, 1, 0, std::move(d)};
  }

  auto gamma = gamma_vectors(d);
  std::vector<NodeSet> cells = d.exclusive;

  // Group common nodes by their exact gamma tuple; d.common is ascending,
  // so groups come out ordered by smallest member.
  std::vector<std::vector<Rational>> keys;
  std::vector<NodeSet> groups;
  for (std::size_t r = 0; r < d.common.size(); ++r) {
    std::vector<Rational> key(mu);
    for (std::size_t i = 0; i < mu; ++i) key[i] = gamma[i][r];
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(std::move(key));
      groups.push_back({d.common[r]});
    } else {
      groups[static_cast<std::size_t>(it - keys.begin())].push_back(d.common[r]);
    }
  }
  const std::size_t h = groups.size();
  cells.insert(cells.end(), groups.begin(), groups.end());
  return CoarsestEep{Partition(n, std::move(cells)), std::move(gamma), mu, h, std::move(d)};
}

}  // namespace multicon
