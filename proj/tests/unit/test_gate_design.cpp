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

#include "doctest.h"

#include "pairgate/errors.hpp"
#include "pairgate/gate_design.hpp"

#include <cmath>

using namespace pairgate;

namespace {

const ResonanceIntegers kRegressionIntegers{1, 2, 1};
// Opposite quarter phases: the branch on which the exact dynamics return the bus.
const ResonanceIntegers kBusReturning{1, 1, 1, QuarterPhase::three_quarter, QuarterPhase::quarter};

GateSolution regression_solution() { return solve_gate(1, 0, 1.0, kRegressionIntegers, 2.2, 1.7); }
GateSolution bus_returning_solution() { return solve_gate(1, 0, 1.0, kBusReturning, 2.08, 1.58); }

GateCandidate reference_point() {
  GateCandidate c;
  c.eta1 = 2.18403;
  c.eta2 = 1.73205;
  c.omega_tau = 56.3186;
  c.integers = kRegressionIntegers;
  return c;
}

}  // namespace

TEST_SUITE("gate_design") {

TEST_CASE("residuals at the reference point") {
  const auto r = condition_residuals(reference_point());
  for (double v : r) CHECK(v < 1e-3);
}

TEST_CASE("residuals at zero duration") {
  GateCandidate c = reference_point();
  c.omega_tau = 0.0;
  const auto r = condition_residuals(c);
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[1] == doctest::Approx(1.0));
  CHECK(r[2] == doctest::Approx(1.0));
}

TEST_CASE("residuals vary continuously with eta2") {
  const GateSolution s = regression_solution();
  GateCandidate c = s;
  double prev = 0.0;
  for (int i = 1; i <= 10; ++i) {
    c.eta2 = s.eta2 + 1e-4 * i;
    const auto r = condition_residuals(c);
    const double worst = std::max({r[0], r[1], r[2]});
    CHECK(worst >= prev);
    CHECK(worst - prev < 1e-3);
    prev = worst;
  }
}

TEST_CASE("solver reproduces the reference triple") {
  const GateSolution s = regression_solution();
  CHECK(std::abs(s.eta1 - 2.18403) < 1e-3);
  CHECK(std::abs(s.eta2 - 1.73205) < 1e-3);
  CHECK(std::abs(s.omega_tau - 56.3186) < 1e-3);
  CHECK(s.max_residual() < 1e-8);
  CHECK(s.k1 == 1);
  CHECK(s.m == 0);
}

TEST_CASE("sign-flipped seeds give sign-flipped solutions") {
  const GateSolution s = regression_solution();
  const GateSolution f = solve_gate(1, 0, 1.0, kRegressionIntegers, -2.2, -1.7);
  CHECK(f.eta1 == doctest::Approx(-s.eta1).epsilon(1e-9));
  CHECK(f.eta2 == doctest::Approx(-s.eta2).epsilon(1e-9));
  CHECK(f.omega_tau == doctest::Approx(s.omega_tau).epsilon(1e-10));
  GateCandidate c = s;
  c.eta1 = -c.eta1;
  c.eta2 = -c.eta2;
  const auto a = condition_residuals(s);
  const auto b = condition_residuals(c);
  for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("a second carrier period yields a distinct solution") {
  const GateSolution s = solve_gate(1, 0, 1.0, {2, 4, 2}, 2.2, 1.7);
  CHECK(s.max_residual() < 1e-8);
  CHECK(s.omega_tau > 60.0);
  const auto r = condition_residuals(s);
  for (double v : r) CHECK(v < 1e-8);
}

TEST_CASE("solver reports failure instead of returning garbage") {
  SolverOptions o;
  o.max_iterations = 1;
  CHECK_THROWS_AS(solve_gate(1, 0, 1.0, kRegressionIntegers, 0.9, 0.9, o), ConvergenceError);
  CHECK_THROWS_AS(solve_gate(1, 1, 1.0, kRegressionIntegers, 2.2, 1.7), SidebandOrderError);
  // eta2 = 1 is a zero of L_1: the ion-2 carrier vanishes at m = 1.
  CHECK_THROWS_AS(solve_gate(2, 1, 1.0, kRegressionIntegers, 1.0, 1.0), ConvergenceError);
}

TEST_CASE("(1,2,1) gate: the exact dynamics leave population on the bus") {
  const GateSolution s = regression_solution();
  const RealizedGate g = realized_gate(s, 0.0);
  CHECK(g.bus_retention == doctest::Approx(0.7346938775510).epsilon(1e-9));
  CHECK(s.bus_defect > 0.5);
  // Under the tabulated coefficients the same point is a perfect gate.
  const RealizedGate t = realized_gate(s, 0.0, CoefficientForm::tabulated);
  CHECK(t.unitarity_defect < 1e-8);
  CHECK(t.bus_retention == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cnot_equivalence(t.spin).residual < 1e-6);
  CHECK(cnot_equivalence(g.spin).residual > 0.1);
}

TEST_CASE("bus-returning solution is a controlled flip") {
  const GateSolution s = bus_returning_solution();
  CHECK(s.max_residual() < 1e-8);
  CHECK(s.bus_defect < 1e-8);
  CHECK(std::abs(s.eta2 - std::sqrt(2.5)) < 1e-9);
  for (double phase : {0.0, 0.7, -2.1}) {
    const RealizedGate g = realized_gate(s, phase);
    CHECK(g.unitarity_defect < 1e-8);
    CHECK(g.bus_retention > 1.0 - 1e-6);
    const Eigen::Matrix4cd ideal = ideal_gate(phase, gate_sign(s));
    CHECK((g.spin - ideal).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(cnot_equivalence(g.spin).residual < 1e-6);
  }
}

TEST_CASE("controlled flip images at phi2 = 0") {
  const Eigen::Matrix4cd u = ideal_gate(0.0);
  // columns and rows ordered gg, ge, eg, ee
  CHECK(u(0, 0) == cd(1.0));
  CHECK(u(1, 1) == cd(1.0));
  CHECK(u(2, 3) == cd(0.0, -1.0));  // |e e> -> -i |e g>
  CHECK(u(3, 2) == cd(0.0, -1.0));  // |e g> -> -i |e e>
  const CnotCorrection c = cnot_equivalence(u);
  CHECK(c.residual < 1e-10);
  for (const Eigen::Matrix2cd* m : {&c.left1, &c.right1, &c.left2, &c.right2}) {
    CHECK(((*m).adjoint() * (*m) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("CNOT equivalence handles phases, swapped control and failures") {
  CHECK(cnot_equivalence(cnot_matrix()).residual < 1e-14);
  CHECK(cnot_equivalence(ideal_gate(1.3, -1)).residual < 1e-12);
  CHECK(cnot_equivalence(ideal_gate(0.4, 1, false)).residual < 1e-12);
  CHECK(cnot_equivalence(Eigen::Matrix4cd::Identity()).residual > 0.5);
}

TEST_CASE("CNOT residual grows with the condition residual") {
  const GateSolution s = bus_returning_solution();
  double prev_res = -1.0;
  double prev_cnot = -1.0;
  double at_solution = -1.0;
  for (double dt : {0.0, 0.01, 0.03, 0.1, 0.3}) {
    GateSolution p = s;
    p.omega_tau = s.omega_tau + dt;
    p.residuals = condition_residuals(p);
    const double cn = cnot_equivalence(realized_gate(p, 0.0).spin).residual;
    CHECK(p.max_residual() >= prev_res);
    CHECK(cn >= prev_cnot);
    prev_res = p.max_residual();
    prev_cnot = cn;
    if (dt == 0.0) at_solution = cn;
  }
  // Local corrections soak up part of the phase error, so growth is slow.
  CHECK(at_solution < 1e-12);
  CHECK(prev_cnot > 1e-4);
}

TEST_CASE("success probability at 56.3 and 56.0") {
  const GateSolution s = regression_solution();
  CHECK(std::abs(success_probability(s, 56.3) - 0.99998) < 5e-4);
  CHECK(std::abs(success_probability(s, 56.0) - 0.9936) < 5e-4);
  CHECK(success_probability(s, s.omega_tau) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(success_probability(s, 56.3186) > 1.0 - 1e-6);
}

TEST_CASE("overlap metric: one at a true gate, lower elsewhere") {
  const GateSolution s = bus_returning_solution();
  CHECK(overlap_probability(s, s.omega_tau) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(overlap_probability(s, s.omega_tau - 0.3) < 1.0);
  const GateSolution r = regression_solution();
  CHECK(overlap_probability(r, r.omega_tau, CoefficientForm::tabulated) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("robustness sweep over the duration") {
  const GateSolution s = regression_solution();
  const SweepResult sw = robustness_sweep(s, SweepParameter::omega_tau, 55.5, 57.0, 151, 2);
  REQUIRE(sw.rows.size() == 151);
  std::size_t best = 0;
  for (std::size_t i = 0; i < sw.rows.size(); ++i) {
    CHECK(sw.rows[i].success >= 0.0);
    CHECK(sw.rows[i].success <= 1.0);
    if (sw.rows[i].success > sw.rows[best].success) best = i;
  }
  CHECK(std::abs(sw.rows[best].value - 56.3186) < 0.011);
  CHECK(sw.rows[best].success > 0.9999);
  CHECK(sw.rows.front().value == 55.5);
  CHECK(sw.rows.back().value == 57.0);
}

TEST_CASE("zero-width sweep is one row at the solution") {
  const GateSolution s = regression_solution();
  const SweepResult sw = robustness_sweep(s, SweepParameter::omega_tau, s.omega_tau, s.omega_tau, 10);
  REQUIRE(sw.rows.size() == 1);
  CHECK(sw.rows[0].success == doctest::Approx(success_probability(s, s.omega_tau)));
  CHECK_THROWS_AS(robustness_sweep(s, SweepParameter::eta1, 0.0, 1.0, 1), OutOfRange);
}

TEST_CASE("one percent LD-parameter errors keep the gate above 0.95") {
  const GateSolution s = regression_solution();
  const SweepResult e2 =
      robustness_sweep(s, SweepParameter::eta2, 0.99 * s.eta2, 1.01 * s.eta2, 41);
  const SweepResult e1 =
      robustness_sweep(s, SweepParameter::eta1, 0.99 * s.eta1, 1.01 * s.eta1, 41);
  CHECK(e2.min_success() > 0.95);
  CHECK(e1.min_success() > 0.95);
  CHECK(e2.min_success() == doctest::Approx(0.964).epsilon(2e-3));
}

TEST_CASE("sweep parameters have stable names") {
  for (auto p : {SweepParameter::omega_tau, SweepParameter::eta1, SweepParameter::eta2,
                 SweepParameter::omega_ratio}) {
    CHECK(sweep_parameter_from_string(to_string(p)) == p);
  }
  CHECK_THROWS_AS(sweep_parameter_from_string("nu"), ConfigError);
}

TEST_CASE("integer scan contains the reference triple exactly once") {
  const auto all = scan_integers();
  int hits = 0;
  for (const auto& s : all) {
    CHECK(s.max_residual() < 1e-8);
    if (std::abs(s.eta1 - 2.18403) < 1e-3 && std::abs(s.eta2 - 1.73205) < 1e-3 &&
        std::abs(s.omega_tau - 56.3186) < 1e-3) {
      ++hits;
      CHECK(s.k1 == 1);
      CHECK(s.integers == kRegressionIntegers);
    }
  }
  CHECK(hits == 1);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].omega_tau <= all[i].omega_tau);
  // Shorter gates exist: the reference point is not the minimum-duration solution.
  CHECK(all.front().omega_tau < 56.0);
}

TEST_CASE("integer scan is independent of the worker count") {
  ScanOptions o;
  o.k_max = 2;
  o.pq_max = 4;
  const auto a = scan_integers(o);
  o.jobs = 3;
  const auto b = scan_integers(o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].eta1 == b[i].eta1);
    CHECK(a[i].omega_tau == b[i].omega_tau);
  }
}

TEST_CASE("mixed-phase scan finds bus-returning gates") {
  ScanOptions o;
  o.k_max = 1;
  o.pq_max = 2;
  o.mixed_phases = true;
  const auto all = scan_integers(o);
  bool found = false;
  for (const auto& s : all) {
    if (s.bus_defect < 1e-8 && s.integers == kBusReturning && std::abs(s.eta2 - std::sqrt(2.5)) < 1e-6) {
      found = true;
    }
  }
  CHECK(found);
}

}
