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

#include "multicon/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace multicon {

namespace {

using Poly = std::vector<Rational>;  // ascending degree

void sort_spectrum(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

// --- dense QR path ------------------------------------------------------------

void balance(Eigen::MatrixXd& a) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Gaussian similarity reduction with partial pivoting.
void to_hessenberg(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index m = 1; m + 1 < n; ++m) {
    double x = 0.0;
    Eigen::Index piv = m;
    for (Eigen::Index j = m; j < n; ++j) {
      if (std::abs(a(j, m - 1)) > std::abs(x)) {
        x = a(j, m - 1);
        piv = j;
      }
    }
    if (piv != m) {
      a.row(piv).swap(a.row(m));
      a.col(piv).swap(a.col(m));
    }
    if (x == 0.0) continue;
    for (Eigen::Index i = m + 1; i < n; ++i) {
      double y = a(i, m - 1);
      if (y == 0.0) continue;
      y /= x;
      a.row(i).tail(n - m + 1) -= y * a.row(m).tail(n - m + 1);
      a.col(m) += y * a.col(i);
      a(i, m - 1) = 0.0;
    }
  }
  for (Eigen::Index i = 2; i < n; ++i)
    for (Eigen::Index j = 0; j + 1 < i; ++j) a(i, j) = 0.0;
}

// --- exact polynomial helpers -----------------------------------------------

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

void make_monic(Poly& p) {
  trim(p);
  if (p.empty()) return;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
}

// Quotient and remainder of a / b, b nonzero.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  trim(a);
  if (b.empty()) throw InternalError("polynomial division by zero");
  if (a.size() < b.size()) return {Poly{}, a};
  Poly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly exact_quotient(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw InternalError("polynomial division left a remainder");
  return q;
}

Poly monic_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

Poly subtract(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  trim(a);
  return a;
}

bool is_one(const Poly& p) { return p.size() == 1 && p[0] == 1; }

Complex horner(const std::vector<double>& c, Complex z) {
  Complex v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
  return v;
}

void newton_polish(const std::vector<double>& c, Complex& z) {
  std::vector<double> dc;
  for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(c[k] * static_cast<double>(k));
  double last = std::abs(horner(c, z));
  for (int it = 0; it < 20 && last > 0.0; ++it) {
    const Complex d = horner(dc, z);
    if (std::abs(d) == 0.0) break;
    const Complex next = z - horner(c, z) / d;
    const double r = std::abs(horner(c, next));
    if (!(r < last)) break;
    z = next;
    last = r;
  }
}

// Roots of a monic square-free polynomial of degree >= 1.
std::vector<Complex> square_free_roots(const Poly& f) {
  const std::size_t d = f.size() - 1;
  if (d == 1) return {Complex(-f[0].get_d(), 0.0)};
  std::vector<double> c(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) c[k] = f[k].get_d();

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) {
    companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d - 1)) = -c[k];
    if (k > 0) companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
  }
  balance(companion);
  auto roots = hessenberg_qr(companion);
  for (auto& z : roots) {
    newton_polish(c, z);
    if (std::abs(z.imag()) <= 1e-14 * std::max(1.0, std::abs(z.real()))) z.imag(0.0);
  }
  return roots;
}

}  // namespace

// --- Spectrum -----------------------------------------------------------------

bool Spectrum::is_real() const {
  return std::all_of(values.begin(), values.end(), [&](const Complex& z) { return std::abs(z.imag()) <= tol; });
}

std::size_t Spectrum::count_near(Complex z) const {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](const Complex& w) { return std::abs(w - z) <= tol; }));
}

std::vector<Complex> hessenberg_qr(Eigen::MatrixXd& a, int max_iterations) {
  const int n = static_cast<int>(a.rows());
  std::vector<Complex> w(static_cast<std::size_t>(n));
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        w[static_cast<std::size_t>(nn)] = Complex(x + t, 0.0);
        --nn;
        continue;
      }
      double y = a(nn - 1, nn - 1);
      double ww = a(nn, nn - 1) * a(nn - 1, nn);
      if (l == nn - 1) {
        const double p = 0.5 * (y - x);
        const double q = p * p + ww;
        double z = std::sqrt(std::abs(q));
        x += t;
        if (q >= 0.0) {
          z = p + std::copysign(z, p);
          const double hi = x + z;
          const double lo = z != 0.0 ? x - ww / z : hi;
          w[static_cast<std::size_t>(nn - 1)] = Complex(hi, 0.0);
          w[static_cast<std::size_t>(nn)] = Complex(lo, 0.0);
        } else {
          w[static_cast<std::size_t>(nn - 1)] = Complex(x + p, z);
          w[static_cast<std::size_t>(nn)] = Complex(x + p, -z);
        }
        nn -= 2;
        continue;
      }
      if (its == max_iterations)
        throw NonConvergence("QR iteration did not converge after " + std::to_string(max_iterations) + " sweeps");
      if (its > 0 && its % 10 == 0) {
        // Exceptional shift.
        t += x;
        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
        x = y = 0.75 * s;
        ww = -0.4375 * s * s;
      }
      ++its;
      int m = nn - 2;
      double p = 0.0;
      double q = 0.0;
      double r = 0.0;
      double z = 0.0;
      for (; m >= l; --m) {
        z = a(m, m);
        r = x - z;
        double s = y - z;
        p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
        q = a(m + 1, m + 1) - z - r - s;
        r = a(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
        if (u + v == v) break;
      }
      for (int i = m + 2; i <= nn; ++i) {
        a(i, i - 2) = 0.0;
        if (i != m + 2) a(i, i - 3) = 0.0;
      }
      for (int k = m; k <= nn - 1; ++k) {
        if (k != m) {
          p = a(k, k - 1);
          q = a(k + 1, k - 1);
          r = k != nn - 1 ? a(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x != 0.0) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) a(k, k - 1) = -a(k, k - 1);
        } else {
          a(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          p = a(k, j) + q * a(k + 1, j);
          if (k != nn - 1) {
            p += r * a(k + 2, j);
            a(k + 2, j) -= p * z;
          }
          a(k + 1, j) -= p * y;
          a(k, j) -= p * x;
        }
        const int mmin = std::min(nn, k + 3);
        for (int i = l; i <= mmin; ++i) {
          p = x * a(i, k) + y * a(i, k + 1);
          if (k != nn - 1) {
            p += z * a(i, k + 2);
            a(i, k + 2) -= p * r;
          }
          a(i, k + 1) -= p * q;
          a(i, k) -= p;
        }
      }
    } while (l < nn - 1);
  }
  return w;
}

Spectrum eigenvalues(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eigenvalues of a non-square matrix");
  if (!m.allFinite()) throw NonFinite("matrix has non-finite entries");
  Eigen::MatrixXd a = m;
  balance(a);
  to_hessenberg(a);
  Spectrum s{hessenberg_qr(a), tol};
  sort_spectrum(s.values);
  return s;
}

std::vector<Rational> characteristic_polynomial(const RatMatrix& m) {
  if (!m.square()) throw DimensionMismatch("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix h = m;

  // Exact similarity reduction to upper Hessenberg form.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::size_t piv = k + 1;
    while (piv < n && h(piv, k) == 0) ++piv;
    if (piv == n) continue;
    if (piv != k + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(k + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, k + 1));
    }
    for (std::size_t i = k + 2; i < n; ++i) {
      if (h(i, k) == 0) continue;
      const Rational f = h(i, k) / h(k + 1, k);
      for (std::size_t j = k; j < n; ++j) h(i, j) -= f * h(k + 1, j);
      for (std::size_t r = 0; r < n; ++r) h(r, k + 1) += f * h(r, i);
    }
  }

  // p_k = (x - h_kk) p_{k-1} - sum_i h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
  std::vector<Poly> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    Poly next(k + 1);
    for (std::size_t d = 0; d < p[k - 1].size(); ++d) {
      next[d + 1] += p[k - 1][d];
      next[d] -= h(k - 1, k - 1) * p[k - 1][d];
    }
    Rational prod = 1;
    for (std::size_t i = k - 1; i >= 1; --i) {
      prod *= h(i, i - 1);
      if (prod == 0) break;
      const Rational c = h(i - 1, k - 1) * prod;
      if (c != 0)
        for (std::size_t d = 0; d < p[i - 1].size(); ++d) next[d] -= c * p[i - 1][d];
    }
    p[k] = std::move(next);
  }
  return p[n];
}

std::vector<std::vector<Rational>> square_free_factors(const std::vector<Rational>& poly) {
  Poly f = poly;
  make_monic(f);
  if (f.size() <= 1) return {};
  std::vector<Poly> out;
  const Poly fp = derivative(f);
  const Poly a0 = monic_gcd(f, fp);
  Poly b = exact_quotient(f, a0);
  Poly c = exact_quotient(fp, a0);
  Poly d = subtract(c, derivative(b));
  while (!is_one(b)) {
    Poly a = monic_gcd(b, d);
    out.push_back(a);
    b = exact_quotient(b, a);
    c = exact_quotient(d, a);
    d = subtract(c, derivative(b));
  }
  return out;
}

std::vector<Complex> polynomial_roots(const std::vector<Rational>& poly) {
  Poly f = poly;
  trim(f);
  if (f.empty()) throw DomainError("the zero polynomial has no finite root set");
  std::vector<Complex> roots;
  std::size_t zeros = 0;
  while (zeros < f.size() && f[zeros] == 0) ++zeros;
  roots.assign(zeros, Complex(0.0, 0.0));
  f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(zeros));
  const auto factors = square_free_factors(f);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].size() <= 1) continue;
    for (const Complex& z : square_free_roots(factors[k])) roots.insert(roots.end(), k + 1, z);
  }
  return roots;
}

Spectrum exact_eigenvalues(const RatMatrix& m, double tol) {
  Spectrum s{polynomial_roots(characteristic_polynomial(m)), tol};
  sort_spectrum(s.values);
  return s;
}

Spectrum exact_eigenvalues(const IntMatrix& m, double tol) { return exact_eigenvalues(to_rational(m), tol); }

std::optional<std::vector<Complex>> multiset_difference(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                                        double tol) {
  std::vector<bool> used(a.size(), false);
  for (const Complex& z : b) {
    std::size_t best = a.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(a[i] - z);
      if (d <= tol && d < best_dist) {
        best = i;
        best_dist = d;
      }
    }
    if (best == a.size()) return std::nullopt;
    used[best] = true;
  }
  std::vector<Complex> rest;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!used[i]) rest.push_back(a[i]);
  return rest;
}

bool multiset_equal(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  if (a.size() != b.size()) return false;
  const auto rest = multiset_difference(a, b, tol);
  return rest && rest->empty();
}

double matching_tolerance(const IntMatrix& m) {
  double norm = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) r += std::abs(static_cast<double>(m(i, j)));
    norm = std::max(norm, r);
  }
  return 1e-8 * std::max(1.0, norm);
}

}  // namespace multicon
