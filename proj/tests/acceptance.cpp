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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "multicon/coarsest.hpp"
#include "multicon/examples.hpp"
#include "multicon/sim.hpp"
#include "multicon/stability.hpp"
#include "multicon/synthesis.hpp"
#include "support.hpp"

using namespace multicon;
using multicon::testing::one_based;
using multicon::testing::reals;

namespace {

constexpr double kDispersionTol = 1e-6;
constexpr double kSpectrumTol = 1e-8;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<NodeSet> sorted_cells(std::vector<NodeSet> cells) {
  std::sort(cells.begin(), cells.end());
  return cells;
}

Eigen::VectorXd draw(std::mt19937_64& rng, std::size_t n) { return random_state(n, rng); }

// --- 1 ------------------------------------------------------------------------

void synthesis_one(Verdict& v) {
  const auto t0 = Clock::now();
  const auto e = builtin_example(1);
  const ControlLayer bip = solve_bip(build_bip(e.original, e.target, LayerMode::AddOnly));
  const ControlLayer cons = constructive_add(e.original, e.target);
  const std::vector<LinkChange> published{{3, 4, true}, {7, 4, true}};
  const ControlLayer chosen = ControlLayer::from_changes(8, published, LayerMode::AddOnly);
  bool valid = true;
  try {
    validate_layer(e.original, chosen);
  } catch (const SignViolation&) {
    valid = false;
  }
  const IntMatrix total = apply_layer(e.original, chosen).laplacian;
  const double dt = seconds_since(t0);
  v.detail << "bip cost " << bip.cost() << ", constructive cost " << cons.cost() << ", {4->5, 8->5} "
           << (valid && is_eep(total, e.target) ? "feasible" : "infeasible") << ", L+L^u "
           << (total == e.published_total ? "matches" : "differs") << ", " << fmt(dt) << " s";
  v.require(bip.cost() == 2, "bip cost 2");
  v.require(cons.cost() == 2, "constructive cost 2");
  v.require(valid && is_eep(total, e.target), "layer feasible");
  v.require(total == e.published_total, "printed L+L^u");
  v.require(dt < 5.0, "runtime < 5 s");
}

// --- 2 ------------------------------------------------------------------------

void structure_one(Verdict& v) {
  const auto e = builtin_example(1);
  const ControlLayer layer = solve_bip(build_bip(e.original, e.target, LayerMode::AddOnly));
  const CoarsestEep c = coarsest_eep(apply_layer(e.original, layer).laplacian);
  const Partition expected = one_based(8, {{1}, {2, 3}, {7, 8}, {4}, {5, 6}});
  std::vector<NodeSet> common(c.pi_star.cells().begin() + static_cast<std::ptrdiff_t>(c.mu), c.pi_star.cells().end());
  const std::vector<NodeSet> expected_common{{3}, {4, 5}};
  v.detail << "pi* = " << to_string(c.pi_star) << ", C cells = " << common.size();
  v.require(c.pi_star == expected, "pi* equality");
  v.require(sorted_cells(common) == expected_common, "C = {{4},{5,6}}");
}

// --- 3 ------------------------------------------------------------------------

void instance_two(Verdict& v) {
  const auto e = builtin_example(2);
  const ControlLayer layer = solve_bip(build_bip(e.original, e.target, LayerMode::AddOnly));
  const IntMatrix total = apply_layer(e.original, layer).laplacian;
  const CoarsestEep c = coarsest_eep(total);
  v.detail << "cost " << layer.cost() << ", pi* = " << to_string(c.pi_star);
  v.require(layer.cost() == 5, "cost 5");
  v.require(c.pi_star == one_based(10, {{1, 2, 3, 4, 5, 6, 9}, {10}, {7, 8}}), "pi*");

  double worst = 0.0, min_gap = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed : {1, 2, 3}) {
    std::mt19937_64 rng(seed);
    const Trajectory t = simulate_single(total, draw(rng, 10), {0.01, 100.0, 1000});
    const ConvergenceReport r = convergence_report(t, c.pi_star, kDispersionTol);
    for (const auto& cell : r.cells) worst = std::max(worst, cell.final_dispersion);
    for (std::size_t h = 0; h < r.cells.size(); ++h)
      for (std::size_t k = h + 1; k < r.cells.size(); ++k) min_gap = std::min(min_gap, r.mean_gaps[h][k]);
  }
  v.detail << ", max dispersion " << fmt(worst) << ", min mean gap " << fmt(min_gap);
  v.require(worst < kDispersionTol, "dispersion < 1e-6");
  v.require(min_gap > 10 * kDispersionTol, "3 distinct means");
}

// --- 4 ------------------------------------------------------------------------

void spectra_three(Verdict& v) {
  const IntMatrix t = builtin_example(3).published_total;
  const CoarsestEep c = coarsest_eep(t);
  const SpectralGap gap = spectral_gap(t, c.pi_star);
  const GainRegion r = gain_region(t, c.pi_star, 1.0, 0.8, c.decomposition);
  const ClusterThreshold* common = nullptr;
  for (const auto& cl : r.clusters)
    if (cl.common) common = &cl;
  v.detail << "gamma " << gap.gamma << ", k1 > " << r.k1_min << ", k2 > " << r.k2_min;
  v.require(multiset_equal(gap.full.values, reals({0, 0, 0, 2, 2, 2, 3, 3}), kSpectrumTol), "lambda(L+L^u)");
  v.require(multiset_equal(gap.quotient.values, reals({0, 0, 0, 2, 3}), kSpectrumTol), "lambda(quotient)");
  v.require(std::abs(gap.gamma - 2.0) < kSpectrumTol, "gamma = 2");
  v.require(std::abs(r.k1_min - 0.5) < kSpectrumTol && std::abs(r.k2_min - 0.4) < kSpectrumTol, "thresholds");
  v.require(common && multiset_equal(common->spectrum, reals({0, 0, 3}), kSpectrumTol), "common part {0,0,3}");
}

// --- 5, 6 -----------------------------------------------------------------------

ConvergenceReport error_run(const IntMatrix& total, const Partition& pi, const SecondOrderGains& g) {
  std::mt19937_64 rng(1);
  const Eigen::VectorXd x0 = draw(rng, total.rows());
  const Eigen::VectorXd v0 = draw(rng, total.rows());
  const Trajectory t = simulate_second_error(total, pi, g, x0, v0, {0.01, 100.0, 1000});
  return convergence_report(t, pi, kDispersionTol);
}

double dispersion_of(const ConvergenceReport& r, const NodeSet& cell) {
  for (const auto& c : r.cells)
    if (c.cell == cell) return r.diverged ? std::numeric_limits<double>::infinity() : c.final_dispersion;
  return std::numeric_limits<double>::quiet_NaN();
}

bool all_converge(const ConvergenceReport& r) {
  return !r.diverged && std::all_of(r.cells.begin(), r.cells.end(),
                                    [](const auto& c) { return c.final_dispersion < kDispersionTol; });
}

void sims_three(Verdict& v) {
  const IntMatrix t = builtin_example(3).published_total;
  const Partition pi = coarsest_eep(t).pi_star;
  const ConvergenceReport ok = error_run(t, pi, {1, 0.8, 0.62, 0.98});
  const ConvergenceReport part = error_run(t, pi, {1, 0.8, 0.45, 0.98});
  const double d56 = dispersion_of(part, {4, 5});
  const double d23 = dispersion_of(part, {1, 2});
  const double d78 = dispersion_of(part, {6, 7});
  double worst = 0.0;
  for (const auto& c : ok.cells) worst = std::max(worst, c.final_dispersion);
  v.detail << "(0.62, 0.98) max dispersion " << fmt(worst) << "; (0.45, 0.98) {5,6} " << fmt(d56) << ", {2,3} "
           << fmt(d23) << ", {7,8} " << fmt(d78);
  v.require(all_converge(ok), "all cells < 1e-6");
  v.require(d56 < kDispersionTol, "{5,6} < 1e-6");
  v.require(d23 > 1e-2 && d78 > 1e-2, "{2,3}, {7,8} > 1e-2");
}

void instance_four(Verdict& v) {
  const IntMatrix t = builtin_example(4).published_total;
  const CoarsestEep c = coarsest_eep(t);
  const SpectralGap gap = spectral_gap(t, c.pi_star);
  const ConvergenceReport ok = error_run(t, c.pi_star, {1, 0.8, 2, 1.8});
  const ConvergenceReport part = error_run(t, c.pi_star, {1, 0.8, 0.4, 1.8});
  const double d78 = dispersion_of(part, {6, 7});
  const double dh1 = dispersion_of(part, {0, 1, 2, 3, 4, 5, 8});
  double worst = 0.0;
  for (const auto& cell : ok.cells) worst = std::max(worst, cell.final_dispersion);
  v.detail << "gamma " << gap.gamma << "; (2, 1.8) max dispersion " << fmt(worst) << "; (0.4, 1.8) {7,8} "
           << fmt(d78) << ", {1..6,9} " << fmt(dh1);
  v.require(multiset_equal(gap.full.values, reals({0, 0, 1, 1, 2, 2, 2, 3, 3, 4}), kSpectrumTol), "lambda(L+L^u)");
  v.require(std::abs(gap.gamma - 1.0) < kSpectrumTol, "gamma = 1");
  v.require(all_converge(ok), "all cells < 1e-6");
  v.require(d78 < kDispersionTol, "{7,8} < 1e-6");
  v.require(dh1 > 1e-2, "{1..6,9} > 1e-2");
}

// --- 7 ------------------------------------------------------------------------

bool target_reached(const IntMatrix& total, const Partition& target, double* worst) {
  std::mt19937_64 rng(1);
  const Trajectory t = simulate_single(total, draw(rng, total.rows()), {0.01, 100.0, 1000});
  const ConvergenceReport r = convergence_report(t, target, kDispersionTol);
  *worst = 0.0;
  for (const auto& c : r.cells) *worst = std::max(*worst, c.final_dispersion);
  return r.stable_count() == r.cells.size();
}

void signed_layers(Verdict& v) {
  const auto e5 = builtin_example(5);
  const ControlLayer s = solve_bip(build_bip(e5.original, e5.target, LayerMode::Signed));
  const AppliedLayer r5 = apply_layer(e5.original, s);
  const auto c5 = s.changes();
  const bool removes46 = std::find(c5.begin(), c5.end(), LinkChange{3, 5, false}) != c5.end();
  double w5 = 0.0;
  const bool reach5 = target_reached(r5.laplacian, e5.target, &w5);

  const auto e6 = builtin_example(6);
  const ControlLayer sc = solve_bip(build_bip(e6.original, e6.target, LayerMode::SignedConnected));
  const AppliedLayer r6 = apply_layer(e6.original, sc);
  std::size_t added = 0, removed = 0;
  for (const auto& c : sc.changes()) (c.added ? added : removed) += 1;
  double w6 = 0.0;
  const bool reach6 = target_reached(r6.laplacian, e6.target, &w6);

  v.detail << "signed: " << s.cost() << " changes, removes 4->6 " << (removes46 ? "yes" : "no") << ", weakly connected "
           << (is_weakly_connected(r5.graph) ? "yes" : "no") << ", max dispersion " << fmt(w5)
           << "; signed-connected: +" << added << " -" << removed << ", weakly connected "
           << (is_weakly_connected(r6.graph) ? "yes" : "no") << ", max dispersion " << fmt(w6);
  v.require(removes46, "removes 4->6");
  v.require(!is_weakly_connected(r5.graph), "signed result not weakly connected");
  v.require(reach5, "signed multi-consensus");
  v.require(added == 1 && removed == 1, "one addition, one removal");
  v.require(is_weakly_connected(r6.graph), "signed-connected result weakly connected");
  v.require(reach6, "signed-connected multi-consensus");
}

// --- 8 ------------------------------------------------------------------------

void reach_property(Verdict& v) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> density(0.05, 0.5);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = multicon::testing::uniform_index(rng, 1, 12);
    const Digraph g = multicon::testing::random_digraph(rng, n, density(rng));
    const Spectrum s = eigenvalues(to_eigen(laplacian(g)), 1e-6);
    if (s.count_near(Complex(0.0, 0.0)) != reaches(g).size()) ++bad;
  }
  v.detail << "200 digraphs, " << bad << " mismatches";
  v.require(bad == 0, "reach count = zero multiplicity");
}

// --- 9 ------------------------------------------------------------------------

void rl_property(Verdict& v) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> density(0.1, 0.5);
  int bad = 0;
  std::string first;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = multicon::testing::uniform_index(rng, 2, 10);
    const IntMatrix l = laplacian(multicon::testing::random_digraph(rng, n, density(rng)));
    const Partition target = multicon::testing::random_partition(rng, n, multicon::testing::uniform_index(rng, 1, n));
    const IntMatrix total = apply_layer(l, constructive_add(l, target)).laplacian;
    std::string report;
    if (!rl_spectrum_identity(total, target, 1e-6, &report)) {
      if (bad++ == 0) first = report;
    }
  }
  v.detail << "100 instances, " << bad << " mismatches";
  v.require(bad == 0, "identity holds: " + first);
}

// --- 10 -----------------------------------------------------------------------

void bip_oracle(Verdict& v) {
  std::mt19937_64 rng(10);
  const auto t0 = Clock::now();
  double solver_seconds = 0.0;
  int bad = 0, infeasible = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = multicon::testing::uniform_index(rng, 3, 5);
    const IntMatrix l = laplacian(multicon::testing::random_digraph(rng, n, 0.4));
    const Partition target = multicon::testing::random_partition(rng, n, multicon::testing::uniform_index(rng, 2, 3));
    for (LayerMode mode : {LayerMode::AddOnly, LayerMode::Signed, LayerMode::SignedConnected}) {
      const auto oracle = multicon::testing::brute_force_layer(l, target, mode);
      const auto s0 = Clock::now();
      std::optional<std::size_t> cost;
      try {
        cost = solve_bip(build_bip(l, target, mode)).cost();
      } catch (const Infeasible&) {
      }
      solver_seconds += seconds_since(s0);
      if (!oracle) ++infeasible;
      if (cost.has_value() != oracle.has_value() || (cost && *cost != oracle->cost)) ++bad;
    }
  }
  const double total = seconds_since(t0);
  v.detail << "150 solves, " << bad << " cost mismatches, " << infeasible << " infeasible, solver " << fmt(solver_seconds)
           << " s, with enumeration " << fmt(total) << " s";
  v.require(bad == 0, "costs equal");
  v.require(total < 60.0, "runtime < 60 s");
}

// --- 11 -----------------------------------------------------------------------

void multi_consensus_property(Verdict& v) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> density(0.1, 0.4);
  int bad_dispersion = 0, bad_refine = 0;
  double longest = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = multicon::testing::uniform_index(rng, 2, 10);
    const Digraph g = multicon::testing::random_digraph(rng, n, density(rng));
    const IntMatrix l = laplacian(g);
    const Partition target = multicon::testing::random_rooted_target(rng, n, rooted_nodes(g));
    const IntMatrix total = apply_layer(l, solve_bip(build_bip(l, target, LayerMode::AddOnly))).laplacian;

    double rate = std::numeric_limits<double>::infinity();
    const double tol = matching_tolerance(total);
    for (Complex z : exact_eigenvalues(total, tol).values)
      if (std::abs(z) > tol) rate = std::min(rate, z.real());
    const double horizon = std::isfinite(rate) ? std::max(100.0, 25.0 / rate) : 100.0;
    longest = std::max(longest, horizon);

    const Trajectory t = simulate_single(total, draw(rng, n), {0.01, horizon, 1000});
    const ConvergenceReport r = convergence_report(t, target, kDispersionTol);
    if (r.stable_count() != r.cells.size()) ++bad_dispersion;
    if (!target.refines(coarsest_eep(total).pi_star)) ++bad_refine;
  }
  v.detail << "50 instances, " << bad_dispersion << " unconverged, " << bad_refine
           << " not refining pi*, longest horizon " << fmt(longest);
  v.require(bad_dispersion == 0, "dispersion < 1e-6");
  v.require(bad_refine == 0, "target refines pi*");
}

// --- 12 -----------------------------------------------------------------------

void rk4_property(Verdict& v) {
  const IntMatrix total = builtin_example(3).published_total;
  const Partition pi = coarsest_eep(total).pi_star;
  const SecondOrderGains g{1, 0.8, 0.62, 0.98};
  std::mt19937_64 rng(1);
  const Eigen::VectorXd x0 = draw(rng, 8), v0 = draw(rng, 8);
  constexpr double kHorizon = 10.0;

  auto final_state = [&](double dt) {
    return simulate_second_error(total, pi, g, x0, v0, {dt, kHorizon, 1}).final_state();
  };
  const Eigen::VectorXd y1 = final_state(0.02), y2 = final_state(0.01), y3 = final_state(0.005);
  const double ratio = (y1 - y2).norm() / (y2 - y3).norm();

  // oracle: full-state exponential projected with R
  const Eigen::MatrixXd l = to_eigen(total);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(8, 8);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(16, 16);
  a.topRightCorner(8, 8) = id;
  a.bottomLeftCorner(8, 8) = g.a * id - g.k1 * l;
  a.bottomRightCorner(8, 8) = g.b * id - g.k2 * l;
  const Eigen::MatrixXd r = to_eigen(r_matrix(pi));
  Eigen::VectorXd y0(16);
  y0 << x0, v0;
  const Trajectory t = simulate_second_error(total, pi, g, x0, v0, {0.01, kHorizon, 200});
  double worst = 0.0;
  for (std::size_t k = 1; k < t.times.size(); ++k) {
    const Eigen::VectorXd y = (a * t.times[k]).exp() * y0;
    Eigen::VectorXd z(16);
    z << r * y.head(8), r * y.tail(8);
    worst = std::max(worst, (z - t.states[k]).cwiseAbs().maxCoeff());
  }
  v.detail << "step-halving ratio " << fmt(ratio) << " over t in [0, " << kHorizon << "], max |RK4 - expm| "
           << fmt(worst) << " at " << t.times.size() - 1 << " sample times";
  v.require(ratio >= 12.0, "ratio >= 12");
  v.require(t.times.size() - 1 == 5, "5 sample times");
  v.require(worst < 1e-6, "expm match < 1e-6");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"instance 1 synthesis", synthesis_one},
      {"instance 1 structure", structure_one},
      {"instance 2 synthesis and consensus", instance_two},
      {"instance 3 spectra and gains", spectra_three},
      {"instance 3 second-order runs", sims_three},
      {"instance 4 spectra and runs", instance_four},
      {"instances 5-6 signed layers", signed_layers},
      {"reach count vs zero eigenvalues", reach_property},
      {"R L eigenvalue identity", rl_property},
      {"BIP optimality vs enumeration", bip_oracle},
      {"synthesized targets reach multi-consensus", multi_consensus_property},
      {"RK4 order and expm oracle", rk4_property},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      criteria[k].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << " #" << k + 1 << " " << criteria[k].first << ": " << v.detail.str()
              << std::endl;
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
