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

#include <random>

using namespace pairgate;

TEST_SUITE("hilbert") {

TEST_CASE("index and its inverses round-trip") {
  const HilbertGeometry g(5, 2, 3);
  CHECK(g.dimension() == 6 * 16 * 4);
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    const int m = g.fock_of(i);
    const std::size_t spec = g.spectator_of(i);
    const int occ[2] = {static_cast<int>(spec / 4), static_cast<int>(spec % 4)};
    CHECK(g.index(m, occ, g.spin1_of(i), g.spin2_of(i)) == i);
  }
  CHECK(g.index(2, Spin::e, Spin::g) == ((2 * 16 + 0) * 2 + 1) * 2 + 0);
}

TEST_CASE("geometry rejects bad sizes") {
  CHECK_THROWS_AS(HilbertGeometry(0), OutOfRange);
  CHECK_THROWS_AS(HilbertGeometry(3, -1, 0), OutOfRange);
  const HilbertGeometry g(3);
  CHECK_THROWS_AS(g.index(4, Spin::g, Spin::g), OutOfRange);
}

TEST_CASE("state vectors must be normalized") {
  const HilbertGeometry g(2);
  CVector v = CVector::Zero(static_cast<Eigen::Index>(g.dimension()));
  v(0) = 1.0;
  v(3) = 1.0;
  CHECK_THROWS_AS(StateVector(g, v), NormalizationError);
  const StateVector s = StateVector::normalized(g, v);
  CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(StateVector::normalized(g, CVector::Zero(v.size())), NormalizationError);
  CVector w = CVector::Zero(5);
  w(0) = 1.0;
  CHECK_THROWS_AS(StateVector(g, w), Error);
}

TEST_CASE("infidelity, top population and extension") {
  const HilbertGeometry g(4);
  const StateVector a = make_basis_state(g, 0, Spin::g, Spin::e);
  const StateVector b = make_basis_state(g, 4, Spin::g, Spin::e);
  CHECK(a.infidelity(a) == doctest::Approx(0.0));
  CHECK(a.infidelity(b) == doctest::Approx(1.0));
  CHECK(a.top_population() == 0.0);
  CHECK(b.top_population() == doctest::Approx(1.0));
  const StateVector big = b.extended(9);
  CHECK(big.geometry().m_max() == 9);
  CHECK(std::abs(big.amplitude(4, Spin::g, Spin::e) - cd(1.0)) < 1e-15);
  CHECK(big.top_population() == 0.0);
}

TEST_CASE("operator matrices check Hermiticity") {
  const HilbertGeometry g(1);
  CMatrix m = CMatrix::Zero(8, 8);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(OperatorMatrix(g, m, true), Error);
  CHECK_NOTHROW(OperatorMatrix(g, m, false));
  m(1, 0) = 1.0;
  CHECK(OperatorMatrix(g, m, true).hermiticity_defect() == 0.0);
}

TEST_CASE("ladder operators obey the truncated commutator") {
  const HilbertGeometry g(6);
  const auto [a, ad] = ladder_operators(g);
  const CMatrix comm = a.entries() * ad.entries() - ad.entries() * a.entries();
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double expected = g.fock_of(i) == 6 ? -6.0 : 1.0;
    CHECK(comm(ii, ii).real() == doctest::Approx(expected));
  }
  CHECK((annihilation(6) - testsupport::ladder(7)).norm() < 1e-15);
}

TEST_CASE("spectral propagator agrees with a Taylor exponential") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    CMatrix h(12, 12);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) h(i, j) = cd(n(rng), n(rng));
    h = (h + h.adjoint().eval()) / 2.0;
    const SpectralPropagator p(h);
    const double t = 0.7 + trial;
    const CMatrix ref = testsupport::taylor_expm(cd(0.0, -t) * h);
    CHECK((p.matrix(t) - ref).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(unitarity_defect(p.matrix(t)) < 1e-12);
  }
}

TEST_CASE("displacement elements converge or report truncation") {
  const cd d = displacement_matrix_element(0.3, 1, 0, 30);
  // <1|exp(i eta (a + a^dag))|0> = i eta e^{-eta^2/2}
  CHECK(std::abs(d - cd(0.0, 0.3 * std::exp(-0.045))) < 1e-12);
  CHECK_THROWS_AS(displacement_matrix_element(3.0, 4, 0, 6), TruncationError);
}

TEST_CASE("default truncation leaves headroom above the sideband") {
  CHECK(default_m_max(0, 1) == 21);
  CHECK(default_m_max(2, 3) == 25);
}

}
