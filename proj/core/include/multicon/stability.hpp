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

#include <string>
#include <vector>

#include "multicon/coarsest.hpp"
#include "multicon/partition.hpp"
#include "multicon/spectrum.hpp"

namespace multicon {

struct SpectralGap {
  Spectrum full;                    // lambda(L)
  Spectrum quotient;                // lambda(L^pi)
  std::vector<Complex> difference;  // lambda(L) minus lambda(L^pi)
  double gamma = 0.0;
};

/// Smallest nonzero element of lambda(L) minus lambda(L^pi). Throws
/// NotEquitable, ComplexSpectrum or EmptyDifference.
SpectralGap spectral_gap(const IntMatrix& laplacian, const Partition& pi);

inline double spectral_gamma(const IntMatrix& laplacian, const Partition& pi) {
  return spectral_gap(laplacian, pi).gamma;
}

/// Stability threshold of one cluster of the reach-ordered block form.
struct ClusterThreshold {
  bool common = false;            // the common-part block rather than an exclusive block
  std::vector<NodeSet> cells;     // pi cells covered by the block
  std::vector<Complex> spectrum;  // lambda(L_i), or lambda(R_delta M) for the common part
  double lambda2 = 0.0;           // smallest nonzero eigenvalue, +inf when there is none
  double k1_min = 0.0;
  double k2_min = 0.0;
};

struct GainRegion {
  double gamma = 0.0;
  double a = 0.0;
  double b = 0.0;
  double k1_min = 0.0;  // open bound k1 > a / gamma
  double k2_min = 0.0;  // open bound k2 > b / gamma
  std::vector<ClusterThreshold> clusters;

  /// Both global bounds hold strictly.
  bool contains(double k1, double k2) const { return k1 > k1_min && k2 > k2_min; }
};

GainRegion gain_region(const IntMatrix& laplacian, const Partition& pi, double a, double b,
                       const ReachDecomposition& decomposition);

/// Smallest eigenvalue with modulus above `tol`; +inf when none. Throws
/// ComplexSpectrum when that candidate set holds a non-real value.
double smallest_nonzero(const std::vector<Complex>& values, double tol);

/// lambda(R L) against (lambda(L) minus lambda(L^pi)) plus M zeros. On
/// mismatch, `report` (when given) receives both sides.
bool rl_spectrum_identity(const IntMatrix& laplacian, const Partition& pi, double tol, std::string* report = nullptr);

/// Both roots of s^2 - (b - k2 lambda) s - (a - k1 lambda) in the open left
/// half-plane.
bool routh_check(double a, double b, double k1, double k2, double lambda);

}  // namespace multicon
