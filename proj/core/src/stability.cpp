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

#include "multicon/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace multicon {

namespace {

std::string format_values(const std::vector<Complex>& v) {
  std::ostringstream out;
  out.precision(12);
  out << "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i].real();
    if (v[i].imag() != 0.0) out << (v[i].imag() < 0 ? "-" : "+") << std::abs(v[i].imag()) << "i";
  }
  out << "}";
  return out.str();
}

void require_eep(const IntMatrix& laplacian, const Partition& pi) {
  if (laplacian.rows() != pi.node_count()) throw DimensionMismatch("Laplacian and partition sizes differ");
  if (!is_eep(laplacian, pi)) throw NotEquitable("partition " + to_string(pi) + " is not an EEP of the Laplacian");
}

// Cells of `pi` meeting `nodes`, each cut down to its members inside `nodes`.
std::vector<NodeSet> cells_within(const Partition& pi, const NodeSet& nodes) {
  std::vector<NodeSet> out;
  for (const auto& cell : pi.cells()) {
    NodeSet part;
    std::set_intersection(cell.begin(), cell.end(), nodes.begin(), nodes.end(), std::back_inserter(part));
    if (!part.empty()) out.push_back(std::move(part));
  }
  return out;
}

ClusterThreshold make_threshold(bool common, std::vector<NodeSet> cells, std::vector<Complex> spectrum, double tol,
                                double a, double b) {
  ClusterThreshold c;
  c.common = common;
  c.cells = std::move(cells);
  c.spectrum = std::move(spectrum);
  c.lambda2 = smallest_nonzero(c.spectrum, tol);
  c.k1_min = std::isinf(c.lambda2) ? 0.0 : a / c.lambda2;
  c.k2_min = std::isinf(c.lambda2) ? 0.0 : b / c.lambda2;
  return c;
}

}  // namespace

double smallest_nonzero(const std::vector<Complex>& values, double tol) {
  double best = std::numeric_limits<double>::infinity();
  for (const Complex& z : values) {
    if (std::abs(z) <= tol) continue;
    if (std::abs(z.imag()) > tol)
      throw ComplexSpectrum("eigenvalue " + format_values({z}) + " is not real; the scalar gain bound does not apply");
    best = std::min(best, z.real());
  }
  return best;
}

SpectralGap spectral_gap(const IntMatrix& laplacian, const Partition& pi) {
  require_eep(laplacian, pi);
  const double tol = matching_tolerance(laplacian);
  SpectralGap g;
  g.full = exact_eigenvalues(laplacian, tol);
  g.quotient = exact_eigenvalues(quotient_laplacian(laplacian, characteristic_matrix(pi)), tol);
  auto diff = multiset_difference(g.full.values, g.quotient.values, tol);
  if (!diff)
    throw InternalError("quotient spectrum " + format_values(g.quotient.values) + " is not contained in " +
                        format_values(g.full.values));
  g.difference = std::move(*diff);
  g.gamma = smallest_nonzero(g.difference, tol);
  if (std::isinf(g.gamma))
    throw EmptyDifference("every eigenvalue outside the quotient spectrum is zero: " + format_values(g.difference));
  return g;
}

GainRegion gain_region(const IntMatrix& laplacian, const Partition& pi, double a, double b,
                       const ReachDecomposition& d) {
  const SpectralGap gap = spectral_gap(laplacian, pi);
  const double tol = matching_tolerance(laplacian);

  GainRegion region;
  region.gamma = gap.gamma;
  region.a = a;
  region.b = b;
  region.k1_min = a / gap.gamma;
  region.k2_min = b / gap.gamma;

  for (std::size_t i = 0; i < d.reach_count(); ++i) {
    region.clusters.push_back(make_threshold(false, cells_within(pi, d.exclusive[i]),
                                             exact_eigenvalues(d.blocks[i], tol).values, tol, a, b));
  }
  if (!d.common.empty()) {
    // R_delta averages within the pi cells of the common part, indexed by
    // position in d.common.
    std::vector<NodeSet> local;
    for (const auto& cell : cells_within(pi, d.common)) {
      NodeSet pos;
      for (Node v : cell)
        pos.push_back(static_cast<Node>(std::lower_bound(d.common.begin(), d.common.end(), v) - d.common.begin()));
      local.push_back(std::move(pos));
    }
    const RatMatrix r_delta = r_matrix(Partition(d.common.size(), local));
    const RatMatrix rm = r_delta * to_rational(d.common_block);
    region.clusters.push_back(
        make_threshold(true, cells_within(pi, d.common), exact_eigenvalues(rm, tol).values, tol, a, b));
  }
  return region;
}

bool rl_spectrum_identity(const IntMatrix& laplacian, const Partition& pi, double tol, std::string* report) {
  require_eep(laplacian, pi);
  const RatMatrix l = to_rational(laplacian);
  const auto lhs = exact_eigenvalues(r_matrix(pi) * l, tol).values;
  const auto full = exact_eigenvalues(l, tol).values;
  const auto quotient = exact_eigenvalues(quotient_laplacian(laplacian, characteristic_matrix(pi)), tol).values;

  auto rhs = multiset_difference(full, quotient, tol);
  bool ok = rhs.has_value();
  if (ok) {
    rhs->insert(rhs->end(), pi.cell_count(), Complex(0.0, 0.0));
    ok = multiset_equal(lhs, *rhs, tol);
  }
  if (!ok && report) {
    *report = "lambda(RL) = " + format_values(lhs) + ", lambda(L) = " + format_values(full) +
              ", lambda(L^pi) = " + format_values(quotient);
  }
  return ok;
}

bool routh_check(double a, double b, double k1, double k2, double lambda) {
  return b - k2 * lambda < 0.0 && a - k1 * lambda < 0.0;
}

}  // namespace multicon
