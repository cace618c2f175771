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

#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "multicon/coarsest.hpp"
#include "multicon/examples.hpp"
#include "multicon/stability.hpp"
#include "multicon/synthesis.hpp"
#include "support.hpp"

using namespace multicon;
using multicon::testing::one_based;
using multicon::testing::reals;

namespace {

IntMatrix complete_laplacian(std::size_t n) {
  IntMatrix l(n, n, -1);
  for (std::size_t i = 0; i < n; ++i) l(i, i) = static_cast<std::int64_t>(n) - 1;
  return l;
}

IntMatrix circulant(std::size_t n, std::initializer_list<std::size_t> offsets) {
  std::vector<Edge> e;
  for (Node u = 0; u < n; ++u)
    for (std::size_t s : offsets) e.push_back({u, (u + s) % n});
  return laplacian(Digraph(n, e));
}

}  // namespace

TEST_CASE("spectral gap on the second-order instances") {
  const auto e3 = builtin_example(3);
  const IntMatrix t3 = e3.published_total;
  const SpectralGap g3 = spectral_gap(t3, coarsest_eep(t3).pi_star);
  CHECK(g3.gamma == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(multiset_equal(g3.quotient.values, reals({0, 0, 0, 2, 3}), 1e-8));
  CHECK(multiset_equal(g3.difference, reals({2, 2, 3}), 1e-8));

  const IntMatrix t4 = builtin_example(4).published_total;
  CHECK(spectral_gamma(t4, coarsest_eep(t4).pi_star) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("complete graph with one cell") {
  for (std::size_t n : {2, 3, 5}) {
    const IntMatrix l = complete_laplacian(n);
    CHECK(spectral_gamma(l, Partition::whole(n)) == doctest::Approx(static_cast<double>(n)));
    const auto oracle = multicon::testing::oracle_eigenvalues(to_eigen(l));
    CHECK(oracle.back().real() == doctest::Approx(static_cast<double>(n)));
  }
}

TEST_CASE("spectral gap errors") {
  const auto e1 = builtin_example(1);
  CHECK_THROWS_AS(spectral_gap(e1.original, e1.target), NotEquitable);
  CHECK_THROWS_AS(spectral_gap(e1.published_total, Partition::singletons(8)), EmptyDifference);
  // directed 3-cycle: difference {1.5 +- i sqrt(3)/2}
  CHECK_THROWS_AS(spectral_gap(circulant(3, {1}), Partition::whole(3)), ComplexSpectrum);
}

TEST_CASE("gain region of instance 3") {
  const IntMatrix t = builtin_example(3).published_total;
  const CoarsestEep c = coarsest_eep(t);
  const GainRegion r = gain_region(t, c.pi_star, 1.0, 0.8, c.decomposition);
  CHECK(r.gamma == doctest::Approx(2.0));
  CHECK(r.k1_min == doctest::Approx(0.5));
  CHECK(r.k2_min == doctest::Approx(0.4));
  CHECK(r.contains(0.62, 0.98));
  CHECK_FALSE(r.contains(0.45, 0.98));
  CHECK_FALSE(r.contains(0.5, 0.98));
  REQUIRE(r.clusters.size() == 4);
  CHECK(std::isinf(r.clusters[0].lambda2));
  CHECK(r.clusters[0].k1_min == 0.0);
  CHECK(r.clusters[1].lambda2 == doctest::Approx(2.0));
  CHECK(r.clusters[2].lambda2 == doctest::Approx(2.0));
  CHECK(r.clusters[3].common);
  CHECK(multiset_equal(r.clusters[3].spectrum, reals({0, 0, 3}), 1e-8));
  CHECK(r.clusters[3].k1_min == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("gain region of instance 4") {
  const IntMatrix t = builtin_example(4).published_total;
  const CoarsestEep c = coarsest_eep(t);
  const GainRegion r = gain_region(t, c.pi_star, 1.0, 0.8, c.decomposition);
  CHECK(r.k1_min == doctest::Approx(1.0));
  CHECK(r.k2_min == doctest::Approx(0.8));
  REQUIRE(r.clusters.size() == 3);
  CHECK(multiset_equal(r.clusters[0].spectrum, reals({0, 1, 1, 2, 2, 2, 3}), 1e-8));
  CHECK(multiset_equal(r.clusters[2].spectrum, reals({0, 4}), 1e-8));
  CHECK(r.clusters[2].k1_min == doctest::Approx(0.25));

  const GainRegion zero = gain_region(t, c.pi_star, 0.0, 0.0, c.decomposition);
  CHECK(zero.k1_min == 0.0);
  CHECK(zero.k2_min == 0.0);
  CHECK(zero.contains(1e-3, 1e-3));
}

TEST_CASE("R L eigenvalue identity") {
  const IntMatrix t = builtin_example(1).published_total;
  CHECK(rl_spectrum_identity(t, coarsest_eep(t).pi_star, 1e-8));
  CHECK(rl_spectrum_identity(t, Partition::singletons(8), 1e-8));
  const IntMatrix c = circulant(6, {1, 2});
  const Partition orbits(6, {{0, 3}, {1, 4}, {2, 5}});
  REQUIRE(is_eep(c, orbits));
  CHECK(rl_spectrum_identity(c, orbits, 1e-8));
}

TEST_CASE("Routh check") {
  CHECK(routh_check(1, 0.8, 0.62, 0.98, 2));
  CHECK_FALSE(routh_check(1, 0.8, 0.45, 0.98, 2));
  CHECK_FALSE(routh_check(1, 0.8, 5, 5, 0));
  for (double lambda : {0.5, 1.0, 2.0, 4.0})
    for (double k1 = 0.05; k1 < 3; k1 += 0.1)
      for (double k2 = 0.05; k2 < 3; k2 += 0.1) {
        const double a = 1.0, b = 0.8;
        CHECK(routh_check(a, b, k1, k2, lambda) == (k1 > a / lambda && k2 > b / lambda));
        // root oracle
        const double p = k2 * lambda - b, q = k1 * lambda - a;
        const std::complex<double> disc = std::sqrt(std::complex<double>(p * p - 4 * q));
        const bool hurwitz = ((-p + disc) / 2.0).real() < 0 && ((-p - disc) / 2.0).real() < 0;
        CHECK(routh_check(a, b, k1, k2, lambda) == hurwitz);
      }
}

TEST_CASE("smallest nonzero") {
  CHECK(smallest_nonzero(reals({0, 0, 3, 2}), 1e-8) == 2.0);
  CHECK(std::isinf(smallest_nonzero(reals({0, 0}), 1e-8)));
  CHECK_THROWS_AS(smallest_nonzero({Complex(0, 0), Complex(1, 1)}, 1e-8), ComplexSpectrum);
}

TEST_CASE("random clustered graphs: gamma equals the smallest cluster lambda2") {
  std::mt19937_64 rng(61);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 60; ++trial) {
    const std::size_t n = multicon::testing::uniform_index(rng, 3, 10);
    const Digraph g = multicon::testing::random_digraph(rng, n, 0.2);
    const Partition target = multicon::testing::random_rooted_target(rng, n, rooted_nodes(g));
    const IntMatrix l = laplacian(g);
    const IntMatrix t = apply_layer(l, constructive_add(l, target)).laplacian;
    const CoarsestEep c = coarsest_eep(t);
    const double tol = matching_tolerance(t);
    CHECK(multiset_difference(exact_eigenvalues(t, tol).values,
                              exact_eigenvalues(quotient_laplacian(t, characteristic_matrix(c.pi_star)), tol).values,
                              tol)
              .has_value());
    CHECK(rl_spectrum_identity(t, c.pi_star, 1e-6));
    GainRegion r;
    try {
      r = gain_region(t, c.pi_star, 1.0, 1.0, c.decomposition);
    } catch (const ComplexSpectrum&) {
      continue;
    } catch (const EmptyDifference&) {
      continue;
    }
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& cl : r.clusters) lo = std::min(lo, cl.lambda2);
    CHECK(r.gamma == doctest::Approx(lo).epsilon(1e-6));
    ++checked;
  }
  CHECK(checked >= 30);
}
