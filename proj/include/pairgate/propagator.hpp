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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pairgate {

/// Two simultaneous pulses: ion 1 on its k1-th sideband, ion 2 on the carrier.
///
/// Frequencies and times are dimensionless; the usual choice is Omega2 = 1 so
/// that `t` is Omega2 t.
struct PulsePair {
  double omega1 = 1.0;
  double omega2 = 1.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double phase1 = 0.0;
  double phase2 = 0.0;
  int sideband1 = 1;  ///< k1 != 0: > 0 red sideband, < 0 blue sideband
  /// Trap frequency nu in the same units; when set, coefficients record
  /// whether the drive is in the weak-excitation regime.
  std::optional<double> trap_frequency;

  void validate() const;
  int sideband_magnitude() const { return sideband1 < 0 ? -sideband1 : sideband1; }
  bool red() const { return sideband1 > 0; }
  /// Ion-1 level that the sideband drive couples at Fock m (e for red, g for blue).
  Spin active_spin() const { return red() ? Spin::e : Spin::g; }
};

/// Which closed form evaluates E_i(t), F_i(t).
enum class CoefficientForm {
  exact,     ///< closed form of the 4x4 block, unitary for every t
  tabulated  ///< (sin/cos lambda_+ -+ sin/cos lambda_-)/Delta formulas, kept for regression
};

/// Derived scalars of the 4x4 block at one Fock level m and time t.
///
/// For the red sideband E maps |m,e,g> and F maps |m,e,e> onto
/// { |m+k,g,g>, |m+k,g,e>, |m,e,g>, |m,e,e> }; the blue sideband swaps the
/// ion-1 labels.
struct AnalyticCoefficients {
  CoefficientForm form = CoefficientForm::exact;
  int fock_index = 0;
  double time = 0.0;

  double alpha1 = 0.0;  ///< sideband coupling Omega^1_{m,|k1|}
  double alpha2 = 0.0;  ///< ion-2 carrier at m, Omega^2_{m,0}
  double gamma2 = 0.0;  ///< ion-2 carrier at m+|k1|, Omega^2_{m+|k1|,0}

  double rho = 0.0;
  double Lambda = 0.0;
  double Delta = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double zeta_plus = 0.0;
  double zeta_minus = 0.0;

  /// sqrt(alpha1^2 + ((alpha2 - gamma2)/2)^2); lambda_+- = |r +- |carrier_mean||.
  double branch_radius = 0.0;
  /// (alpha2 + gamma2) / 2.
  double carrier_mean = 0.0;

  std::array<cd, 4> E{};
  std::array<cd, 4> F{};

  std::optional<bool> weak_excitation;

  double e_norm2() const;
  double f_norm2() const;
  /// sum_i E_i conj(F_i).
  cd overlap() const;
};

/// Threshold on max(Omega_j)/nu below which the weak-excitation flag is set.
inline constexpr double kWeakExcitationRatio = 0.1;
/// Delta/Lambda below which the tabulated form refuses to divide.
inline constexpr double kDegenerateSplitting = 1e-10;

/// Throws SidebandOrderError unless |k1| > m.
AnalyticCoefficients compute_coefficients(const PulsePair& pulses, int m, double t,
                                          CoefficientForm form = CoefficientForm::exact);

/// Raw linear map on an amplitude vector; no normalization is enforced, so
/// the tabulated form can be inspected where it is not unitary.
CVector propagate_amplitudes(const HilbertGeometry& geometry, const CVector& amplitudes,
                             const PulsePair& pulses, double t,
                             CoefficientForm form = CoefficientForm::exact);

/// Evolve one basis ket |m, s1, s2> (|k1| > m) for time t.
StateVector evolve_basis(const HilbertGeometry& geometry, int m, Spin s1, Spin s2,
                         const PulsePair& pulses, double t,
                         CoefficientForm form = CoefficientForm::exact);

/// Linear extension over every component of `state`. Each Fock component m
/// must satisfy |k1| > m; spectator occupations are carried unchanged.
/// Throws NormalizationError when the selected form is not unitary at t.
StateVector evolve(const StateVector& state, const PulsePair& pulses, double t,
                   CoefficientForm form = CoefficientForm::exact);

/// Resonant carrier pulse on one ion: |g> -> cos|g> - i e^{-i phi} sin|e>,
/// |e> -> cos|e> - i e^{i phi} sin|g>, with angle Omega_{m,0} t per Fock level.
StateVector carrier_rotation(const StateVector& state, int ion, double omega, double eta,
                             double phase, double t);

/// One (pulses, m, t) point for checks that sweep many parameter tuples.
struct PropagationSample {
  PulsePair pulses;
  int fock_index = 0;
  double time = 0.0;
};

/// Box from which random valid tuples are drawn.
struct SampleDomain {
  int max_sideband = 2;
  double eta_min = 0.1;
  double eta_max = 2.2;
  double ratio_min = 0.5;  ///< Omega1/Omega2
  double ratio_max = 1.5;
  double time_max = 20.0;  ///< in units of 1/Omega2
};

/// Red-sideband tuples with k1 in [1, max_sideband], m < k1, Omega2 = 1.
std::vector<PropagationSample> sample_valid_tuples(std::size_t count, std::uint64_t seed,
                                                   const SampleDomain& domain = {});

/// Per-coefficient comparison of the tabulated and exact forms.
struct CoefficientDiscrepancy {
  std::size_t samples = 0;
  std::array<double, 4> max_diff_e{};  ///< max |E_i(tabulated) - E_i(exact)|
  std::array<double, 4> max_diff_f{};
  double tabulated_norm_defect = 0.0;  ///< max | sum|E|^2 - 1 |, | sum|F|^2 - 1 |
  double tabulated_overlap_defect = 0.0;
  double exact_norm_defect = 0.0;
  double exact_overlap_defect = 0.0;
  std::size_t skipped_degenerate = 0;

  /// Coefficients whose tabulated value matches the exact one within `tol`,
  /// labelled "E1".."F4".
  std::vector<std::string> agreeing(double tol) const;
};

CoefficientDiscrepancy compare_coefficient_forms(std::span<const PropagationSample> samples);

}  // namespace pairgate
