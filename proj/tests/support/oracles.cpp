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

#include "oracles.hpp"

#include <cmath>

namespace testsupport {

CMatrix taylor_expm(const CMatrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMatrix scaled = a / std::pow(2.0, squarings);
  CMatrix term = CMatrix::Identity(a.rows(), a.cols());
  CMatrix sum = term;
  for (int n = 1; n <= 40; ++n) {
    term = term * scaled / static_cast<double>(n);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

CVector taylor_evolve(const CMatrix& h, const CVector& psi, double t) {
  return taylor_expm(cd(0.0, -t) * h) * psi;
}

double laguerre_sum(int n, int alpha, double x) {
  // Exact integer binomials and long double accumulation; the alternating
  // sum cancels heavily once x is a few units.
  long double total = 0.0L;
  for (int i = 0; i <= n; ++i) {
    long double binom = 1.0L;
    for (int j = 1; j <= n - i; ++j) binom = binom * (alpha + i + j) / j;
    long double term = binom;
    for (int j = 1; j <= i; ++j) term *= static_cast<long double>(x) / j;
    total += (i % 2 ? -term : term);
  }
  return static_cast<double>(total);
}

CMatrix ladder(int n) {
  CMatrix a = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) a(i - 1, i) = std::sqrt(static_cast<double>(i));
  return a;
}

namespace {

CMatrix displacement(double eta, int dim) {
  const CMatrix a = ladder(dim);
  return taylor_expm(cd(0.0, eta) * (a + a.adjoint()));
}

}  // namespace

double rabi_from_displacement(double omega, double eta, int m, int k) {
  const int dim = m + k + 60 + static_cast<int>(8 * eta * eta);
  const CMatrix d = displacement(eta, dim);
  return 0.5 * omega * std::abs(d(m + k, m));
}

CMatrix resonant_hamiltonian(double omega1, double omega2, double eta1, double eta2, double phase1,
                             double phase2, int k1, int nmax) {
  const int dim = nmax + 1;
  // Truncating exp(i eta (a + a^dag)) distorts the top rows; build it bigger and crop.
  const int big = dim + 60;
  const CMatrix d1 = displacement(eta1, big).topLeftCorner(dim, dim);
  const CMatrix d2 = displacement(eta2, big).topLeftCorner(dim, dim);
  const int n = 4 * dim;
  CMatrix h = CMatrix::Zero(n, n);
  auto idx = [](int m, int s1, int s2) { return (m * 2 + s1) * 2 + s2; };
  for (int m = 0; m < dim; ++m) {
    for (int mp = 0; mp < dim; ++mp) {
      for (int other = 0; other < 2; ++other) {
        // Ion 1 raised (g -> e) while the phonon number changes by -k1.
        if (mp == m - k1) {
          h(idx(mp, 1, other), idx(m, 0, other)) +=
              0.5 * omega1 * std::polar(1.0, -phase1) * d1(mp, m);
        }
        // Ion 2 carrier.
        if (mp == m) {
          h(idx(m, other, 1), idx(m, other, 0)) += 0.5 * omega2 * std::polar(1.0, -phase2) * d2(m, m);
        }
      }
    }
  }
  return h + h.adjoint().eval();
}

}  // namespace testsupport
