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

#include "pairgate/hilbert.hpp"
#include "pairgate/propagator.hpp"

#include <array>
#include <span>
#include <vector>

namespace pairgate {

/// One laser acting on one ion. sideband > 0 red, < 0 blue, 0 carrier.
struct LaserDrive {
  double omega = 0.0;
  double eta = 0.0;
  double phase = 0.0;
  int sideband = 0;
};

/// Drives on ion 1 and ion 2.
using DriveSet = std::array<LaserDrive, 2>;

DriveSet drives_of(const PulsePair& pulses);

/// A non-CM collective mode carried along as a spectator of the gate.
struct SpectatorMode {
  double frequency = 1.7320508075688772;  ///< nu_l in units of the CM frequency nu
  double ld1 = 0.0;                       ///< eta_1^l
  double ld2 = 0.0;                       ///< eta_2^l
  int truncation = 3;                     ///< must equal the geometry's spectator_m_max

  /// eta_j^l = eta_j sqrt(nu / nu_l). A stand-in until mode vectors are supplied.
  static SpectatorMode placeholder(const PulsePair& pulses, double frequency, int truncation);
};

/// Treatment of the spectator-mode operator factor in the effective Hamiltonian.
enum class SpectatorFactor {
  identity,  ///< F_j = I (weak-excitation replacement)
  diagonal   ///< F_j = prod_l e^{-(eta_j^l)^2/2} sum_n (i eta_j^l)^{2n} b^dag^n b^n / (n!)^2
};

struct TrapModel {
  double nu = 100.0;  ///< CM frequency in the same units as the Rabi strengths
  std::vector<SpectatorMode> spectators;
};

/// Geometry sized for `trap` with the given CM truncation.
HilbertGeometry geometry_for(const TrapModel& trap, int m_max);

/// Time-independent RWA Hamiltonian built term by term from the normal-ordered
/// operator series sum_n (i eta)^{2n+k} a^dag^n a^{n+k} / (n! (n+k)!).
OperatorMatrix effective_hamiltonian(const DriveSet& drives, const HilbertGeometry& geometry,
                                     std::span<const SpectatorMode> spectators = {},
                                     SpectatorFactor factor = SpectatorFactor::identity);
OperatorMatrix effective_hamiltonian(const PulsePair& pulses, const HilbertGeometry& geometry);

/// Interaction-picture Hamiltonian at time t, including every off-resonant
/// term retained by the truncation. Drive j picks up e^{i (k_j nu t - phi_j)}
/// and each mode operator b_l^dag carries e^{i nu_l t}.
OperatorMatrix full_hamiltonian_at(const DriveSet& drives, const TrapModel& trap,
                                   const HilbertGeometry& geometry, double t);
OperatorMatrix full_hamiltonian_at(const PulsePair& pulses, const TrapModel& trap,
                                   const HilbertGeometry& geometry, double t);

enum class HamiltonianSource { effective, full };

enum class StepMethod {
  comoving_frame,        ///< exact: H(t) = W(t) H_c W(t)^dag with diagonal W, one exponential
  magnus4,               ///< fixed-step fourth-order Magnus, unitary per step
  exponential_midpoint   ///< fixed-step exp(-i H(t + dt/2) dt)
};

struct IntegratorConfig {
  double dt = 0.0;  ///< 0 selects default_step()
  StepMethod method = StepMethod::comoving_frame;
  double leak_tolerance = 1e-6;
  bool check_convergence = true;
  /// Stepped runs are repeated with 2 dt; their infidelity must stay below 10x this.
  double convergence_tolerance = 1e-8;
  SpectatorFactor spectator_factor = SpectatorFactor::identity;
};

/// (1/400) min(2 pi / nu, 2 pi / lambda_max), lambda_max the spectral radius
/// of the effective Hamiltonian.
double default_step(const DriveSet& drives, const TrapModel& trap, const HilbertGeometry& geometry);

/// Schroedinger evolution of `state` for `t_final`. Throws TruncationError when
/// the top two CM levels end above leak_tolerance and ConvergenceError when the
/// step-doubling check fails.
StateVector integrate(HamiltonianSource source, const DriveSet& drives, const TrapModel& trap,
                      const StateVector& state, double t_final, const IntegratorConfig& cfg = {});
StateVector integrate(HamiltonianSource source, const PulsePair& pulses, const TrapModel& trap,
                      const StateVector& state, double t_final, const IntegratorConfig& cfg = {});

}  // namespace pairgate
