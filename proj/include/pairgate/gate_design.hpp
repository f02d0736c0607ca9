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
#include <cstddef>
#include <string>
#include <vector>

namespace pairgate {

/// Target phase of sin(lambda tau) at a resonance: pi/2 (sin = +1) or 3 pi/2 (sin = -1).
enum class QuarterPhase { quarter = 1, three_quarter = 3 };

/// Integer freedom of the gate conditions:
///   alpha2 tau = 2 pi p,   lambda_+- tau = 2 pi q_+- + phase_+-.
///
/// With both phases at pi/2 this is the textbook condition
/// cos(alpha2 tau) = sin(lambda_+ tau) = sin(lambda_- tau) = 1. When
/// alpha1^2 > alpha2 gamma2 the bus only returns to |m> if the two phases
/// differ (sin(lambda_+ tau) = -sin(lambda_- tau)); see bus_returning().
struct ResonanceIntegers {
  int p = 1;
  int q_plus = 0;
  int q_minus = 0;
  QuarterPhase plus_phase = QuarterPhase::quarter;
  QuarterPhase minus_phase = QuarterPhase::quarter;

  double plus_target() const;
  double minus_target() const;
  bool operator==(const ResonanceIntegers&) const = default;
};

/// Parameter point to be tested against the conditions. Omega2 = 1, so
/// omega_tau is the duration in units of 1/Omega2.
struct GateCandidate {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double omega_ratio = 1.0;  ///< Omega1 / Omega2
  int k1 = 1;
  int m = 0;
  double omega_tau = 0.0;
  ResonanceIntegers integers;

  PulsePair pulses(double phase1 = 0.0, double phase2 = 0.0) const;
};

/// |cos(alpha2 tau) - 1|, |sin(lambda_+ tau) - s_+|, |sin(lambda_- tau) - s_-|,
/// with s_+- = sin(phase_+-).
using ConditionResiduals = std::array<double, 3>;

struct GateSolution : GateCandidate {
  ConditionResiduals residuals{};
  int iterations = 0;
  /// max(|sin(r tau)|, |cos(a+ tau)|): zero when the exact dynamics return the bus.
  double bus_defect = 0.0;

  double max_residual() const;
};

ConditionResiduals condition_residuals(const GateCandidate& candidate);

/// Bus-return defect of a candidate, see GateSolution::bus_defect.
double bus_return_defect(const GateCandidate& candidate);

struct SolverOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;  ///< on the phase-residual norm
  double jacobian_step = 1e-6;
};

/// Damped Newton on (eta1, eta2) with tau = 2 pi p / |alpha2|. Throws
/// ConvergenceError when the iteration stalls or alpha2 vanishes.
GateSolution solve_gate(int k1, int m, double omega_ratio, const ResonanceIntegers& integers,
                        double seed_eta1, double seed_eta2, const SolverOptions& options = {});

/// Spin-sector matrix of the pulse pair at the solution's duration, with the bus in |m>.
/// Columns and rows are ordered gg, ge, eg, ee.
struct RealizedGate {
  Eigen::Matrix4cd spin;
  double bus_retention = 0.0;      ///< min over inputs of the population left on |m>
  double unitarity_defect = 0.0;   ///< of the spin block
};

RealizedGate realized_gate(const GateSolution& solution, double phase2,
                           CoefficientForm form = CoefficientForm::exact, double phase1 = 0.0,
                           double omega_tau = -1.0);

/// +1 or -1: the gate maps |e1 g2> to -i s e^{-i phase2} |e1 e2> (red sideband).
int gate_sign(const GateSolution& solution, CoefficientForm form = CoefficientForm::exact);

/// Identity on the idle control block, -i s [[0, e^{i phi2}], [e^{-i phi2}, 0]] on the active one.
Eigen::Matrix4cd ideal_gate(double phase2, int sign = 1, bool red = true);

/// Local unitaries mapping a controlled gate onto CNOT (control qubit 1, target qubit 2):
/// (L1 x L2) gate (R1 x R2) ~ CNOT.
struct CnotCorrection {
  Eigen::Matrix2cd left1;
  Eigen::Matrix2cd right1;
  Eigen::Matrix2cd left2;
  Eigen::Matrix2cd right2;
  double residual = 0.0;  ///< max-norm distance to CNOT
};

CnotCorrection cnot_equivalence(const Eigen::Matrix4cd& gate);

Eigen::Matrix4cd cnot_matrix();

/// min(cos^2(alpha2 t), sin^2(lambda_+ t), sin^2(lambda_- t)) at t = omega_tau_actual.
double success_probability(const GateSolution& solution, double omega_tau_actual);

/// Minimum over the four spin inputs (bus in |m>) of |<ideal image|U(t)|input>|^2.
double overlap_probability(const GateSolution& solution, double omega_tau_actual,
                           CoefficientForm form = CoefficientForm::exact);

enum class SweepParameter { omega_tau, eta1, eta2, omega_ratio };

std::string to_string(SweepParameter p);
SweepParameter sweep_parameter_from_string(const std::string& name);

struct SweepRow {
  double value = 0.0;
  double success = 0.0;       ///< success_probability
  double overlap_exact = 0.0; ///< overlap_probability, exact form
  ConditionResiduals residuals{};
};

struct SweepResult {
  SweepParameter parameter = SweepParameter::omega_tau;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<SweepRow> rows;

  double min_success() const;
};

/// Evaluates `steps` evenly spaced values of one parameter, the others held
/// at the solution. lo == hi gives a single row. Parallel over `jobs` threads;
/// row order follows the grid.
SweepResult robustness_sweep(const GateSolution& solution, SweepParameter parameter, double lo,
                             double hi, int steps, int jobs = 1);

struct ScanOptions {
  int m = 0;
  double omega_ratio = 1.0;
  int k_max = 3;
  int pq_max = 6;
  double eta_min = 0.15;
  double eta_max = 3.5;
  int grid = 48;  ///< seed grid points per axis
  /// Also search tuples with opposite quarter phases (bus-returning branch).
  bool mixed_phases = false;
  int jobs = 1;
  SolverOptions solver;
};

/// Every positive-eta solution with k1 <= k_max and p, q_+- <= pq_max, sorted
/// by omega_tau ascending. Duplicates (same integers, eta within 1e-6) are merged.
std::vector<GateSolution> scan_integers(const ScanOptions& options = {});

}  // namespace pairgate
