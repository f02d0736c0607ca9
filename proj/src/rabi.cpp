// Copyright 2026 The pairgate Authors
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

#include "pairgate/rabi.hpp"

#include "pairgate/errors.hpp"

#include <cmath>
#include <string>

namespace pairgate {

namespace {
constexpr double kHalfPiExact = 1.57079632679489661923;
}  // namespace

double associated_laguerre(int n, int alpha, double x) {
  if (n < 0) throw OutOfRange("Laguerre degree must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + alpha - x;
  for (int j = 1; j < n; ++j) {
    // (j+1) L_{j+1} = (2j + 1 + alpha - x) L_j - (j + alpha) L_{j-1}
    const double next = ((2.0 * j + 1.0 + alpha - x) * curr - (j + alpha) * prev) / (j + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double generalized_rabi(const CouplingSpec& spec) {
  const int m = spec.fock_index;
  const int k = spec.sideband_order;
  if (m < 0 || k < 0) {
    throw OutOfRange("generalized_rabi needs m >= 0 and k >= 0 (got m=" + std::to_string(m) +
                     ", k=" + std::to_string(k) + ")");
  }
  const double eta = spec.ld_parameter;
  const double x = eta * eta;
  const double laguerre = associated_laguerre(m, k, x);
  if (k > 0 && eta == 0.0) return 0.0;

  double log_mag = -0.5 * x + 0.5 * (std::lgamma(m + 1.0) - std::lgamma(m + k + 1.0));
  double sign = 1.0;
  if (k > 0) {
    log_mag += k * std::log(std::abs(eta));
    if (eta < 0.0 && (k % 2) == 1) sign = -1.0;
  }
  return 0.5 * spec.rabi_strength * sign * std::exp(log_mag) * laguerre;
}

double ld_parameter(const LaserGeometry& g) {
  if (g.wavenumber <= 0.0 || g.ion_mass <= 0.0 || g.trap_frequency <= 0.0 || g.ion_count < 1) {
    throw OutOfRange("laser geometry needs positive wavenumber, mass, trap frequency and ion count");
  }
  // cos(pi/2) is 6e-17 in floating point; an orthogonal beam is exactly zero.
  if (g.angle == kHalfPiExact) return 0.0;
  const double scale = std::sqrt(kReducedPlanck * g.wavenumber * g.wavenumber /
                                 (2.0 * g.ion_mass * g.ion_count * g.trap_frequency));
  return scale * std::cos(g.angle);
}

LdRegime ld_regime_check(double eta, int m, double threshold) {
  const double margin = (m + 0.5) * eta * eta;
  return {margin < threshold, margin};
}

}  // namespace pairgate
