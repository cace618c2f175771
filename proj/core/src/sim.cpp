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

#include "multicon/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace multicon {

namespace {

void require_steps(const StepOptions& opt) {
  if (!(opt.dt > 0.0)) throw DomainError("time step must be positive");
  if (!(opt.horizon >= opt.dt)) throw DomainError("horizon must be at least one time step");
  if (opt.stride == 0) throw DomainError("sampling stride must be positive");
}

void require_size(const Eigen::VectorXd& v, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(v.size()) != n)
    throw DimensionMismatch(std::string(what) + " has " + std::to_string(v.size()) + " entries, expected " +
                            std::to_string(n));
}

}  // namespace

Trajectory integrate_linear(const Eigen::MatrixXd& a, const Eigen::VectorXd& y0, const StepOptions& opt) {
  require_steps(opt);
  const auto steps = static_cast<std::size_t>(std::llround(opt.horizon / opt.dt));
  Trajectory t;
  t.dt = opt.dt;
  t.times.push_back(0.0);
  t.states.push_back(y0);

  Eigen::VectorXd y = y0;
  const double h = opt.dt;
  for (std::size_t k = 1; k <= steps; ++k) {
    const Eigen::VectorXd s1 = a * y;
    const Eigen::VectorXd s2 = a * (y + 0.5 * h * s1);
    const Eigen::VectorXd s3 = a * (y + 0.5 * h * s2);
    const Eigen::VectorXd s4 = a * (y + h * s3);
    y += (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);

    const bool finite = y.allFinite();
    const bool escaped = !finite || y.cwiseAbs().maxCoeff() > opt.divergence_limit;
    if (escaped) {
      t.diverged = true;
      if (finite) {
        t.times.push_back(static_cast<double>(k) * h);
        t.states.push_back(y);
      }
      break;
    }
    if (k % opt.stride == 0 || k == steps) {
      t.times.push_back(static_cast<double>(k) * h);
      t.states.push_back(y);
    }
  }
  return t;
}

Trajectory simulate_single(const IntMatrix& laplacian, const Eigen::VectorXd& x0, const StepOptions& opt) {
  validate_laplacian(laplacian);
  require_size(x0, laplacian.rows(), "initial state");
  StepOptions o = opt;
  o.divergence_limit = std::numeric_limits<double>::infinity();
  Trajectory t = integrate_linear(-to_eigen(laplacian), x0, o);
  if (t.diverged) throw NonFinite("single-integrator state became non-finite at t = " + std::to_string(t.times.back()));
  t.model = Model::Single;
  t.agents = laplacian.rows();
  return t;
}

Eigen::MatrixXd second_order_matrix(const IntMatrix& laplacian, const SecondOrderGains& g) {
  const auto n = static_cast<Eigen::Index>(laplacian.rows());
  const Eigen::MatrixXd l = to_eigen(laplacian);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  a.topRightCorner(n, n) = id;
  a.bottomLeftCorner(n, n) = g.a * id - g.k1 * l;
  a.bottomRightCorner(n, n) = g.b * id - g.k2 * l;
  return a;
}

Trajectory simulate_second(const IntMatrix& laplacian, const SecondOrderGains& g, const Eigen::VectorXd& x0,
                           const Eigen::VectorXd& v0, const StepOptions& opt) {
  validate_laplacian(laplacian);
  const std::size_t n = laplacian.rows();
  require_size(x0, n, "initial positions");
  require_size(v0, n, "initial velocities");
  Eigen::VectorXd y0(2 * static_cast<Eigen::Index>(n));
  y0 << x0, v0;
  Trajectory t = integrate_linear(second_order_matrix(laplacian, g), y0, opt);
  t.model = Model::Second;
  t.agents = n;
  return t;
}

Trajectory simulate_second_error(const IntMatrix& laplacian, const Partition& pi, const SecondOrderGains& g,
                                 const Eigen::VectorXd& x0, const Eigen::VectorXd& v0, const StepOptions& opt) {
  validate_laplacian(laplacian);
  const std::size_t n = laplacian.rows();
  if (pi.node_count() != n) throw DimensionMismatch("Laplacian and partition sizes differ");
  if (!is_eep(laplacian, pi)) throw NotEquitable("partition " + to_string(pi) + " is not an EEP of the Laplacian");
  require_size(x0, n, "initial positions");
  require_size(v0, n, "initial velocities");

  const RatMatrix r = r_matrix(pi);
  const Eigen::MatrixXd rd = to_eigen(r);
  const Eigen::MatrixXd rl = to_eigen(r * to_rational(laplacian));
  const auto ni = static_cast<Eigen::Index>(n);
  // R z = z on the invariant subspace; writing R in front of every term
  // keeps round-off from feeding the cell-mean directions, which would
  // otherwise grow at the open-loop rate of [[0, 1], [a, b]].
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * ni, 2 * ni);
  a.topRightCorner(ni, ni) = rd;
  a.bottomLeftCorner(ni, ni) = g.a * rd - g.k1 * rl;
  a.bottomRightCorner(ni, ni) = g.b * rd - g.k2 * rl;

  Eigen::VectorXd z0(2 * ni);
  z0 << rd * x0, rd * v0;
  StepOptions o = opt;
  o.divergence_limit = std::numeric_limits<double>::infinity();
  Trajectory t = integrate_linear(a, z0, o);
  t.model = Model::Second;
  t.agents = n;
  return t;
}

std::size_t ConvergenceReport::stable_count() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.stable; }));
}

ConvergenceReport convergence_report(const Trajectory& t, const Partition& pi, double tol) {
  if (t.states.empty()) throw DomainError("empty trajectory");
  if (pi.node_count() != t.agents)
    throw DimensionMismatch("trajectory has " + std::to_string(t.agents) + " agents but the partition covers " +
                            std::to_string(pi.node_count()));
  const auto n = static_cast<Eigen::Index>(t.agents);
  const bool second = t.model == Model::Second;

  ConvergenceReport rep;
  rep.tol = tol;
  rep.diverged = t.diverged;
  rep.final_time = t.times.back();
  for (const auto& cell : pi.cells()) {
    CellConvergence c;
    c.cell = cell;
    c.dispersion.reserve(t.states.size());
    for (const auto& y : t.states) {
      double worst = 0.0;
      for (std::size_t p = 0; p < cell.size(); ++p) {
        for (std::size_t q = p + 1; q < cell.size(); ++q) {
          const auto i = static_cast<Eigen::Index>(cell[p]);
          const auto j = static_cast<Eigen::Index>(cell[q]);
          const double dx = y(i) - y(j);
          const double dv = second ? y(n + i) - y(n + j) : 0.0;
          worst = std::max(worst, std::hypot(dx, dv));
        }
      }
      c.dispersion.push_back(worst);
    }
    c.final_dispersion = c.dispersion.back();
    double sum = 0.0;
    for (Node v : cell) sum += t.final_state()(static_cast<Eigen::Index>(v));
    c.final_mean = sum / static_cast<double>(cell.size());
    c.stable = !t.diverged && c.final_dispersion < tol;
    rep.cells.push_back(std::move(c));
  }
  const std::size_t m = rep.cells.size();
  rep.mean_gaps.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t h = 0; h < m; ++h)
    for (std::size_t k = 0; k < m; ++k) rep.mean_gaps[h][k] = std::abs(rep.cells[h].final_mean - rep.cells[k].final_mean);
  return rep;
}

Eigen::VectorXd random_state(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v(i) = lo + (hi - lo) * u;
  }
  return v;
}

}  // namespace multicon
