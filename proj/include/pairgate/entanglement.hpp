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

#include "pairgate/gate_design.hpp"
#include "pairgate/hilbert.hpp"
#include "pairgate/propagator.hpp"

#include <Eigen/Dense>

namespace pairgate {

/// Carrier rotation on ion 1 for t1, then the pulse pair for the gate duration.
struct EntanglementRecipe {
  double t1 = 0.0;              ///< rotation duration, units of 1/Omega2
  double rotation_phase = 0.0;  ///< phi_1 of the ion-1 carrier pulse
  double gate_phase = 0.0;      ///< phi_2 of the ion-2 carrier during the gate
  GateSolution gate;
  int initial_m = 0;  ///< bus Fock level; must equal gate.m
  CoefficientForm form = CoefficientForm::exact;
  /// Residual budget for the gate conditions and the bus Schmidt test.
  double gate_tolerance = 1e-6;
};

/// alpha1-tilde = Omega^1_{m,0}: the ion-1 carrier coupling used by the rotation.
double rotation_coupling(const EntanglementRecipe& recipe);

/// Final state on (bus) x (spins). Throws Error if the gate residuals exceed
/// the tolerance and BusEntangled if the largest Schmidt weight of the
/// bus|spins split is below 1 - gate_tolerance.
StateVector prepare_entangled(const EntanglementRecipe& recipe);

/// Spin amplitudes (gg, ge, eg, ee) on the bus level m, renormalized.
Eigen::Vector4cd spin_state(const StateVector& state, int m);

/// Largest Schmidt weight of the bus|spins split.
double bus_schmidt_weight(const StateVector& state);

/// 2 |a d - b c|.
double concurrence(const Eigen::Vector4cd& spins);

enum class EprState { psi_plus, psi_minus };

/// |<Psi+-|spins>|^2 with Psi+- = (|gg> +- |ee>)/sqrt(2).
double epr_fidelity(const Eigen::Vector4cd& spins, EprState which);

/// Closed-form (U, V): U = cos(a t1), V = -s e^{-i(phi_1 + phi_2)} sin(a t1),
/// s = gate_sign of the recipe's gate.
std::pair<cd, cd> entangled_amplitudes(const EntanglementRecipe& recipe);

/// Rotation phase phi_1 in [0, 2 pi) that makes V/U real with the sign of `target`.
double matching_rotation_phase(EprState target, double gate_phase, int sign);

}  // namespace pairgate
