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

#pragma once

namespace pairgate {

/// Coupling of one ion to the CM mode for a drive on the k-th sideband.
struct CouplingSpec {
  double rabi_strength = 0.0;  ///< carrier Rabi frequency Omega (>= 0)
  double ld_parameter = 0.0;   ///< Lamb-Dicke parameter eta
  int fock_index = 0;          ///< lower Fock level m
  int sideband_order = 0;      ///< k >= 0
};

/// Generalized Laguerre polynomial L_n^{(alpha)}(x) by the three-term recurrence.
double associated_laguerre(int n, int alpha, double x);

/// Omega_{m,k} = (Omega/2) e^{-eta^2/2} eta^k sqrt(m!/(m+k)!) L_m^{(k)}(eta^2).
///
/// Real and possibly negative; the i^k phase of the sideband matrix element is
/// carried by the propagator. The factorial ratio is evaluated in log space so
/// m + k beyond 170 does not overflow.
double generalized_rabi(const CouplingSpec& spec);

/// Laser and trap geometry fixing the Lamb-Dicke parameter of one ion.
struct LaserGeometry {
  double wavenumber = 0.0;      ///< kappa, rad/m
  double angle = 0.0;           ///< theta between wave vector and trap axis, rad
  double ion_mass = 0.0;        ///< M, kg
  int ion_count = 2;            ///< N
  double trap_frequency = 0.0;  ///< nu, rad/s
};

inline constexpr double kReducedPlanck = 1.054571817e-34;  // J s

/// eta = sqrt(hbar kappa^2 / (2 M N nu)) cos(theta).
double ld_parameter(const LaserGeometry& geometry);

struct LdRegime {
  bool within = false;  ///< margin < threshold
  double margin = 0.0;  ///< (m + 1/2) eta^2
};

inline constexpr double kDefaultLdThreshold = 0.1;

LdRegime ld_regime_check(double eta, int m, double threshold = kDefaultLdThreshold);

}  // namespace pairgate
