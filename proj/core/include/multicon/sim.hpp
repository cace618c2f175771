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
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "multicon/matrix.hpp"
#include "multicon/partition.hpp"

namespace multicon {

enum class Model { Single, Second };

/// Sampled states. Second-order states are laid out [x_1..x_N, v_1..v_N].
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  double dt = 0.0;
  std::string integrator = "rk4";
  Model model = Model::Single;
  std::size_t agents = 0;
  /// Set when integration stopped early because the state left the
  /// divergence limit.
  bool diverged = false;

  const Eigen::VectorXd& final_state() const { return states.back(); }
};

struct SecondOrderGains {
  double a = 0.0;
  double b = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
};

struct StepOptions {
  double dt = 0.01;
  double horizon = 100.0;
  std::size_t stride = 1;           // keep every stride-th step (the last step is always kept)
  double divergence_limit = 1e9;    // stop once any |state| exceeds this
};

/// Fixed-step classic RK4 on y' = A y.
Trajectory integrate_linear(const Eigen::MatrixXd& a, const Eigen::VectorXd& y0, const StepOptions& opt);

/// x' = -L x. Throws NonFinite if the state blows up.
Trajectory simulate_single(const IntMatrix& laplacian, const Eigen::VectorXd& x0, const StepOptions& opt = {});

/// x' = v, v' = a x + b v - L (k1 x + k2 v).
Eigen::MatrixXd second_order_matrix(const IntMatrix& laplacian, const SecondOrderGains& g);

Trajectory simulate_second(const IntMatrix& laplacian, const SecondOrderGains& g, const Eigen::VectorXd& x0,
                           const Eigen::VectorXd& v0, const StepOptions& opt = {});

/// Second-order dynamics in cluster-error coordinates z = (R x, R v), which
/// close on themselves when `pi` is an EEP: z_x' = R z_v,
/// z_v' = R (a z_x + b z_v) - R L (k1 z_x + k2 z_v). Only non-finite values
/// stop the run. Throws NotEquitable.
Trajectory simulate_second_error(const IntMatrix& laplacian, const Partition& pi, const SecondOrderGains& g,
                                 const Eigen::VectorXd& x0, const Eigen::VectorXd& v0, const StepOptions& opt = {});

struct CellConvergence {
  NodeSet cell;
  std::vector<double> dispersion;  // one entry per sample
  double final_dispersion = 0.0;
  double final_mean = 0.0;         // mean of x over the cell at the last sample
  bool stable = false;
};

struct ConvergenceReport {
  std::vector<CellConvergence> cells;
  std::vector<std::vector<double>> mean_gaps;  // |mean_h - mean_k|
  double final_time = 0.0;
  bool diverged = false;
  double tol = 0.0;

  std::size_t stable_count() const;
};

/// Per-cell dispersion max_{i,j} |y_i - y_j| with y = x (single) or (x, v)
/// (second order). Pairwise differences ignore a common offset, so the
/// value is the same for states and cluster-error coordinates. A diverged
/// trajectory flags no cell as stable.
ConvergenceReport convergence_report(const Trajectory& t, const Partition& pi, double tol = 1e-6);

/// Uniform draw in [lo, hi) per entry from the top 53 bits of each output.
Eigen::VectorXd random_state(std::size_t n, std::mt19937_64& rng, double lo = -5.0, double hi = 5.0);

}  // namespace multicon
