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

#include "pairgate/entanglement.hpp"

#include "pairgate/errors.hpp"
#include "pairgate/rabi.hpp"

#include <cmath>
#include <string>

namespace pairgate {

double rotation_coupling(const EntanglementRecipe& r) {
  return generalized_rabi({r.gate.omega_ratio, r.gate.eta1, r.initial_m, 0});
}

StateVector prepare_entangled(const EntanglementRecipe& r) {
  if (r.initial_m != r.gate.m) throw OutOfRange("recipe bus level differs from the gate's m");
  if (r.gate.max_residual() > r.gate_tolerance) {
    throw Error("gate residual " + std::to_string(r.gate.max_residual()) + " exceeds tolerance");
  }
  const int km = r.gate.k1 < 0 ? -r.gate.k1 : r.gate.k1;
  const HilbertGeometry g(r.initial_m + km);
  const StateVector start = make_basis_state(g, r.initial_m, Spin::g, Spin::g);
  const StateVector rotated = carrier_rotation(start, 1, r.gate.omega_ratio, r.gate.eta1,
                                               r.rotation_phase, r.t1);
  const PulsePair pulses = r.gate.pulses(0.0, r.gate_phase);
  const CVector raw = propagate_amplitudes(g, rotated.amplitudes(), pulses, r.gate.omega_tau, r.form);
  StateVector out = StateVector::normalized(g, raw);
  const double w = bus_schmidt_weight(out);
  if (w < 1.0 - r.gate_tolerance) {
    throw BusEntangled("bus and spins are entangled after the gate (Schmidt weight " +
                       std::to_string(w) + ")");
  }
  return out;
}

Eigen::Vector4cd spin_state(const StateVector& state, int m) {
  const HilbertGeometry& g = state.geometry();
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) {
    v(i) = state.amplitudes()(static_cast<Eigen::Index>(
        g.index(m, static_cast<Spin>(i / 2), static_cast<Spin>(i % 2))));
  }
  const double n = v.norm();
  if (n == 0.0) throw NormalizationError("no population on the requested bus level");
  return v / n;
}

double bus_schmidt_weight(const StateVector& state) {
  const auto rows = static_cast<Eigen::Index>(state.size() / 4);
  // Row-major reshape: row = bus configuration, column = spin pair.
  CMatrix split(rows, 4);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) split(i, j) = state.amplitudes()(4 * i + j);
  }
  const Eigen::JacobiSVD<CMatrix> svd(split);
  const double s = svd.singularValues()(0);
  return s * s;
}

double concurrence(const Eigen::Vector4cd& v) {
  return 2.0 * std::abs(v(0) * v(3) - v(1) * v(2));
}

double epr_fidelity(const Eigen::Vector4cd& v, EprState which) {
  const double sign = which == EprState::psi_plus ? 1.0 : -1.0;
  return std::norm((v(0) + sign * v(3)) / std::sqrt(2.0));
}

std::pair<cd, cd> entangled_amplitudes(const EntanglementRecipe& r) {
  const double angle = rotation_coupling(r) * r.t1;
  const int s = gate_sign(r.gate, r.form);
  const cd u = std::cos(angle);
  const cd v = -static_cast<double>(s) * std::polar(1.0, -(r.rotation_phase + r.gate_phase)) *
               std::sin(angle);
  return {u, v};
}

double matching_rotation_phase(EprState target, double gate_phase, int sign) {
  // V/U = -s e^{-i(phi_1 + phi_2)}; Psi+ needs V/U = +1, Psi- needs -1.
  const bool want_plus = target == EprState::psi_plus;
  const bool flip = (sign > 0) == want_plus;
  double phi = -gate_phase + (flip ? kPi : 0.0);
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0.0) phi += 2.0 * kPi;
  return phi;
}

}  // namespace pairgate
