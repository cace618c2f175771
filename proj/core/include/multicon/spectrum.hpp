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

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "multicon/matrix.hpp"

namespace multicon {

using Complex = std::complex<double>;

/// Eigenvalue multiset, sorted by real part then imaginary part.
struct Spectrum {
  std::vector<Complex> values;
  double tol = 1e-8;

  std::size_t size() const noexcept { return values.size(); }
  bool is_real() const;
  /// Number of entries within `tol` of `z`.
  std::size_t count_near(Complex z) const;
};

/// Balancing, elimination to upper Hessenberg form and Francis double-shift
/// QR. Accurate to roughly sqrt(eps) around defective eigenvalues; use
/// `exact_eigenvalues` when the matrix is rational.
Spectrum eigenvalues(const Eigen::MatrixXd& m, double tol = 1e-8);

/// Eigenvalues of an upper Hessenberg matrix (destroyed). Throws
/// NonConvergence after `max_iterations` sweeps on one eigenvalue.
std::vector<Complex> hessenberg_qr(Eigen::MatrixXd& h, int max_iterations = 60);

/// Characteristic polynomial det(xI - m), coefficients in ascending degree.
std::vector<Rational> characteristic_polynomial(const RatMatrix& m);

/// Square-free decomposition: factors[k] is the monic product of the
/// irreducible factors of multiplicity k + 1 (constant 1 when none).
std::vector<std::vector<Rational>> square_free_factors(const std::vector<Rational>& poly);

/// Roots with multiplicity of a rational polynomial: zero roots are split
/// off exactly, the rest come from companion matrices of the square-free
/// factors, each root polished by Newton steps.
std::vector<Complex> polynomial_roots(const std::vector<Rational>& poly);

/// Eigenvalues through the exact characteristic polynomial. Multiplicities
/// are exact, so repeated and defective eigenvalues lose no accuracy.
Spectrum exact_eigenvalues(const RatMatrix& m, double tol = 1e-8);
Spectrum exact_eigenvalues(const IntMatrix& m, double tol = 1e-8);

/// Removes from `a` one nearest match within `tol` for every entry of `b`
/// (ties to the smallest index). Nullopt when some entry of `b` has no
/// match left.
std::optional<std::vector<Complex>> multiset_difference(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                                        double tol);

bool multiset_equal(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol);

/// 1e-8 * max(1, ||m||_inf).
double matching_tolerance(const IntMatrix& m);

}  // namespace multicon
