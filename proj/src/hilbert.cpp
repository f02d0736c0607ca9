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

#include "pairgate/hilbert.hpp"

#include "pairgate/errors.hpp"

#include <cmath>
#include <string>

namespace pairgate {

HilbertGeometry::HilbertGeometry(int m_max, int n_spectator_modes, int spectator_m_max)
    : m_max_(m_max),
      n_spectator_modes_(n_spectator_modes),
      spectator_m_max_(spectator_m_max),
      spectator_configs_(1) {
  if (m_max < 1) throw OutOfRange("m_max must be >= 1, got " + std::to_string(m_max));
  if (n_spectator_modes < 0 || spectator_m_max < 0) {
    throw OutOfRange("spectator mode count and truncation must be non-negative");
  }
  for (int l = 0; l < n_spectator_modes; ++l) {
    spectator_configs_ *= static_cast<std::size_t>(spectator_m_max) + 1;
  }
}

std::size_t HilbertGeometry::index(int m, Spin s1, Spin s2) const {
  if (m < 0 || m > m_max_) {
    throw OutOfRange("Fock index " + std::to_string(m) + " outside 0.." + std::to_string(m_max_));
  }
  return ((static_cast<std::size_t>(m) * spectator_configs_) * 2 + static_cast<std::size_t>(s1)) * 2 +
         static_cast<std::size_t>(s2);
}

std::size_t HilbertGeometry::index(int m, std::span<const int> spectators, Spin s1,
                                   Spin s2) const {
  if (static_cast<int>(spectators.size()) != n_spectator_modes_) {
    throw OutOfRange("expected " + std::to_string(n_spectator_modes_) + " spectator occupations");
  }
  std::size_t spec = 0;
  for (int n : spectators) {
    if (n < 0 || n > spectator_m_max_) throw OutOfRange("spectator occupation out of range");
    spec = spec * (static_cast<std::size_t>(spectator_m_max_) + 1) + static_cast<std::size_t>(n);
  }
  if (m < 0 || m > m_max_) throw OutOfRange("Fock index outside truncation");
  return ((static_cast<std::size_t>(m) * spectator_configs_ + spec) * 2 +
          static_cast<std::size_t>(s1)) * 2 +
         static_cast<std::size_t>(s2);
}

StateVector::StateVector(HilbertGeometry geometry, CVector amplitudes)
    : geometry_(std::move(geometry)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != geometry_.dimension()) {
    throw Error("amplitude vector size does not match geometry dimension");
  }
  const double n2 = amplitudes_.squaredNorm();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw NormalizationError("state norm^2 = " + std::to_string(n2));
  }
}

StateVector StateVector::normalized(HilbertGeometry geometry, CVector amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0 || !std::isfinite(n)) throw NormalizationError("cannot normalize a zero vector");
  amplitudes /= n;
  return StateVector(std::move(geometry), std::move(amplitudes));
}

cd StateVector::amplitude(int m, Spin s1, Spin s2) const {
  return amplitudes_(static_cast<Eigen::Index>(geometry_.index(m, s1, s2)));
}

cd StateVector::inner(const StateVector& other) const {
  if (!(geometry_ == other.geometry_)) throw Error("inner product across different geometries");
  return amplitudes_.dot(other.amplitudes_);
}

double StateVector::infidelity(const StateVector& other) const {
  return 1.0 - std::norm(inner(other));
}

double StateVector::top_population(int levels) const {
  double p = 0.0;
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    if (geometry_.fock_of(static_cast<std::size_t>(i)) > geometry_.m_max() - levels) {
      p += std::norm(amplitudes_(i));
    }
  }
  return p;
}

StateVector StateVector::extended(int m_max) const {
  if (m_max < geometry_.m_max()) throw OutOfRange("extended() cannot shrink the truncation");
  HilbertGeometry bigger(m_max, geometry_.n_spectator_modes(), geometry_.spectator_m_max());
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(bigger.dimension()));
  // CM Fock is the most significant index, so the old block is a prefix.
  amps.head(amplitudes_.size()) = amplitudes_;
  return StateVector(bigger, std::move(amps));
}

OperatorMatrix::OperatorMatrix(HilbertGeometry geometry, CMatrix entries, bool hermitian)
    : geometry_(std::move(geometry)), entries_(std::move(entries)), hermitian_(hermitian) {
  const auto dim = static_cast<Eigen::Index>(geometry_.dimension());
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw Error("operator shape does not match geometry dimension");
  }
  if (hermitian_ && hermiticity_defect() > kHermitianTolerance) {
    throw Error("operator flagged Hermitian has defect " + std::to_string(hermiticity_defect()));
  }
}

double OperatorMatrix::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

StateVector make_basis_state(const HilbertGeometry& geometry, int m, Spin s1, Spin s2) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(geometry.dimension()));
  amps(static_cast<Eigen::Index>(geometry.index(m, s1, s2))) = 1.0;
  return StateVector(geometry, std::move(amps));
}

CMatrix annihilation(int m_max) {
  CMatrix a = CMatrix::Zero(m_max + 1, m_max + 1);
  for (int m = 1; m <= m_max; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  return a;
}

std::pair<OperatorMatrix, OperatorMatrix> ladder_operators(const HilbertGeometry& geometry) {
  const CMatrix a = annihilation(geometry.m_max());
  const auto rest = static_cast<Eigen::Index>(geometry.spectator_configurations() * 4);
  const auto dim = static_cast<Eigen::Index>(geometry.dimension());
  CMatrix lifted = CMatrix::Zero(dim, dim);
  for (int m = 1; m <= geometry.m_max(); ++m) {
    for (Eigen::Index r = 0; r < rest; ++r) {
      lifted((m - 1) * rest + r, m * rest + r) = a(m - 1, m);
    }
  }
  CMatrix lifted_dag = lifted.adjoint();
  return {OperatorMatrix(geometry, std::move(lifted), false),
          OperatorMatrix(geometry, std::move(lifted_dag), false)};
}

SpectralPropagator::SpectralPropagator(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

CMatrix SpectralPropagator::matrix(double t) const {
  CVector phases(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i) phases(i) = std::exp(-kI * values_(i) * t);
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

CVector SpectralPropagator::apply(const CVector& v, double t) const {
  CVector w = vectors_.adjoint() * v;
  for (Eigen::Index i = 0; i < values_.size(); ++i) w(i) *= std::exp(-kI * values_(i) * t);
  return vectors_ * w;
}

CMatrix displacement_operator(double eta, int m_max) {
  const CMatrix a = annihilation(m_max);
  const CMatrix x = a + a.adjoint();
  // exp(i eta X) = exp(-i (-X) eta)
  return SpectralPropagator(-x).matrix(eta);
}

cd displacement_matrix_element(double eta, int m, int n, int m_max) {
  if (m < 0 || n < 0 || m > m_max || n > m_max) {
    throw OutOfRange("displacement indices outside truncation");
  }
  const cd coarse = displacement_operator(eta, m_max)(m, n);
  const cd fine = displacement_operator(eta, m_max + 10)(m, n);
  if (std::abs(coarse - fine) > 1e-9) {
    throw TruncationError("displacement element not converged at m_max = " +
                          std::to_string(m_max));
  }
  return fine;
}

double unitarity_defect(const CMatrix& u) {
  return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace pairgate
