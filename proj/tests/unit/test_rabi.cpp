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

#include "oracles.hpp"
#include "pairgate/errors.hpp"
#include "pairgate/hilbert.hpp"
#include "pairgate/rabi.hpp"

#include <cmath>

using namespace pairgate;

TEST_SUITE("rabi") {

TEST_CASE("Laguerre recurrence matches the explicit sum and the standard library") {
  for (int n = 0; n <= 12; ++n) {
    for (int alpha = 0; alpha <= 5; ++alpha) {
      for (double x : {0.0, 0.01, 0.5, 1.0, 3.0, 4.77, 9.0}) {
        const double v = associated_laguerre(n, alpha, x);
        const double ref = testsupport::laguerre_sum(n, alpha, x);
        const double scale = std::max(1.0, std::abs(ref));
        CHECK(std::abs(v - ref) < 1e-10 * scale);
        CHECK(std::abs(v - std::assoc_laguerre(n, alpha, x)) < 1e-10 * scale);
      }
    }
  }
  CHECK_THROWS_AS(associated_laguerre(-1, 0, 1.0), OutOfRange);
}

TEST_CASE("closed-form coupling values") {
  CHECK(generalized_rabi({2.0, 0.0, 7, 0}) == doctest::Approx(1.0));
  CHECK(generalized_rabi({1.0, std::sqrt(3.0), 0, 0}) ==
        doctest::Approx(0.5 * std::exp(-1.5)).epsilon(1e-14));
  CHECK(generalized_rabi({1.0, std::sqrt(3.0), 0, 0}) == doctest::Approx(0.1115651).epsilon(1e-6));
  CHECK(generalized_rabi({1.0, 0.05, 0, 1}) ==
        doctest::Approx(0.5 * 0.05 * std::exp(-0.00125)).epsilon(1e-14));
  for (double eta : {0.3, 1.0, 1.4}) {
    CHECK(generalized_rabi({1.0, eta, 1, 0}) ==
          doctest::Approx(0.5 * std::exp(-eta * eta / 2) * (1 - eta * eta)).epsilon(1e-13));
  }
  CHECK(generalized_rabi({1.0, 1.0, 1, 0}) == doctest::Approx(0.0));
  CHECK(generalized_rabi({1.0, 0.0, 0, 2}) == 0.0);
  CHECK_THROWS_AS(generalized_rabi({1.0, 0.5, -1, 0}), OutOfRange);
  CHECK_THROWS_AS(generalized_rabi({1.0, 0.5, 0, -1}), OutOfRange);
}

TEST_CASE("modulus equals the displacement matrix element") {
  for (double eta : {0.1, 0.5, 1.0, 1.73205, 2.18403}) {
    for (int m = 0; m <= 5; ++m) {
      for (int k = 0; k <= 3; ++k) {
        const double v = std::abs(generalized_rabi({1.0, eta, m, k}));
        const double taylor = testsupport::rabi_from_displacement(1.0, eta, m, k);
        const double eig = 0.5 * std::abs(displacement_matrix_element(eta, m + k, m, m + k + 40));
        CAPTURE(eta);
        CAPTURE(m);
        CAPTURE(k);
        // Absolute floor: some grid points sit on Laguerre roots.
        CHECK(std::abs(v - taylor) <= 1e-9 * taylor + 1e-14);
        CHECK(std::abs(v - eig) <= 1e-9 * eig + 1e-14);
      }
    }
  }
}

TEST_CASE("large Fock indices stay finite and bounded") {
  for (int m : {150, 200, 400}) {
    const double v = generalized_rabi({1.0, 0.3, m, 5});
    CHECK(std::isfinite(v));
    CHECK(std::abs(v) <= 0.5);
  }
}

TEST_CASE("carrier bound with equality only at eta = 0") {
  for (int m = 0; m <= 8; ++m) {
    CHECK(std::abs(generalized_rabi({1.0, 0.0, m, 0})) == doctest::Approx(0.5));
    for (double eta : {0.01, 0.2, 1.0, 2.5}) CHECK(std::abs(generalized_rabi({1.0, eta, m, 0})) < 0.5);
  }
}

TEST_CASE("odd sideband orders flip sign with eta, even ones do not") {
  for (int k = 0; k <= 4; ++k) {
    const double a = generalized_rabi({1.0, 0.8, 2, k});
    const double b = generalized_rabi({1.0, -0.8, 2, k});
    CHECK(b == doctest::Approx(k % 2 ? -a : a));
  }
}

TEST_CASE("Lamb-Dicke limit") {
  for (double eta : {0.001, 0.01, 0.03, 0.05}) {
    const double side = generalized_rabi({1.0, eta, 0, 1});
    const double carrier = generalized_rabi({1.0, eta, 0, 0});
    CHECK(std::abs(side - 0.5 * eta) / (0.5 * eta) < 0.005);
    CHECK(std::abs(carrier - 0.5) / 0.5 < 0.002);
  }
}

TEST_CASE("geometric LD parameter") {
  LaserGeometry g;
  g.wavenumber = 2 * M_PI / 729e-9;
  g.ion_mass = 40 * 1.66053906660e-27;
  g.ion_count = 2;
  g.trap_frequency = 2 * M_PI * 1e6;
  const double eta0 = ld_parameter(g);
  CHECK(eta0 == doctest::Approx(std::sqrt(kReducedPlanck * g.wavenumber * g.wavenumber /
                                          (2 * g.ion_mass * 2 * g.trap_frequency))));
  LaserGeometry doubled = g;
  doubled.wavenumber *= 2;
  CHECK(ld_parameter(doubled) == doctest::Approx(2 * eta0));
  LaserGeometry back = g;
  back.angle = M_PI;
  CHECK(ld_parameter(back) == doctest::Approx(-eta0));
  LaserGeometry ortho = g;
  ortho.angle = M_PI / 2;
  CHECK(ld_parameter(ortho) == 0.0);
  LaserGeometry bad = g;
  bad.ion_mass = 0;
  CHECK_THROWS_AS(ld_parameter(bad), OutOfRange);
}

TEST_CASE("LD regime check") {
  const LdRegime deep = ld_regime_check(0.05, 0);
  CHECK(deep.within);
  CHECK(deep.margin == doctest::Approx(0.00125));
  const LdRegime wide = ld_regime_check(1.73205, 0);
  CHECK_FALSE(wide.within);
  CHECK(wide.margin == doctest::Approx(1.5).epsilon(1e-5));
  const LdRegime border = ld_regime_check(0.3, 5);
  CHECK_FALSE(border.within);
  CHECK(border.margin == doctest::Approx(0.495));
  CHECK(ld_regime_check(0.3, 5, 0.5).within);
}

}
