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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace pairgate {

using cd = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cd kI{0.0, 1.0};

/// Internal level of one ion.
enum class Spin : int { g = 0, e = 1 };

inline Spin flip(Spin s) { return s == Spin::g ? Spin::e : Spin::g; }

/// Layout of the composite space
///   (CM Fock 0..m_max) x (spectator Fock 0..spectator_m_max)^n x C2 x C2.
///
/// Basis index = ((m * S + spectator) * 2 + s1) * 2 + s2, where S is the
/// number of spectator configurations and `spectator` is the mixed-radix
/// index of the spectator occupations (first mode most significant).
class HilbertGeometry {
 public:
  explicit HilbertGeometry(int m_max, int n_spectator_modes = 0,
                           int spectator_m_max = 0);

  int m_max() const { return m_max_; }
  int n_spectator_modes() const { return n_spectator_modes_; }
  int spectator_m_max() const { return spectator_m_max_; }

  std::size_t fock_dimension() const { return static_cast<std::size_t>(m_max_) + 1; }
  std::size_t spectator_configurations() const { return spectator_configs_; }
  std::size_t dimension() const { return fock_dimension() * spectator_configs_ * 4; }

  /// Index with every spectator mode in its ground state.
  std::size_t index(int m, Spin s1, Spin s2) const;
  std::size_t index(int m, std::span<const int> spectators, Spin s1, Spin s2) const;

  /// Inverse of index(): CM Fock number of a basis index.
  int fock_of(std::size_t idx) const {
    return static_cast<int>(idx / (4 * spectator_configs_));
  }
  std::size_t spectator_of(std::size_t idx) const { return (idx / 4) % spectator_configs_; }
  Spin spin1_of(std::size_t idx) const { return static_cast<Spin>((idx / 2) % 2); }
  Spin spin2_of(std::size_t idx) const { return static_cast<Spin>(idx % 2); }

  bool operator==(const HilbertGeometry&) const = default;

 private:
  int m_max_;
  int n_spectator_modes_;
  int spectator_m_max_;
  std::size_t spectator_configs_;
};

/// Normalized amplitude vector on a HilbertGeometry.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-10;

  /// Throws NormalizationError unless |amplitudes|^2 = 1 within kNormTolerance.
  StateVector(HilbertGeometry geometry, CVector amplitudes);

  /// Rescales to unit norm; throws on a zero vector.
  static StateVector normalized(HilbertGeometry geometry, CVector amplitudes);

  const HilbertGeometry& geometry() const { return geometry_; }
  const CVector& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }

  cd amplitude(int m, Spin s1, Spin s2) const;
  cd inner(const StateVector& other) const;

  /// 1 - |<this|other>|^2.
  double infidelity(const StateVector& other) const;

  /// Population of the highest `levels` CM Fock levels.
  double top_population(int levels = 2) const;

  /// Same amplitudes embedded in a larger CM truncation.
  StateVector extended(int m_max) const;

 private:
  HilbertGeometry geometry_;
  CVector amplitudes_;
};

/// Square complex matrix on a HilbertGeometry, optionally flagged Hermitian.
class OperatorMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-12;

  /// When `hermitian` is set, throws Error if max|A - A^dagger| exceeds the tolerance.
  OperatorMatrix(HilbertGeometry geometry, CMatrix entries, bool hermitian);

  const HilbertGeometry& geometry() const { return geometry_; }
  const CMatrix& entries() const { return entries_; }
  bool hermitian() const { return hermitian_; }

  double hermiticity_defect() const;
  CVector apply(const CVector& v) const { return entries_ * v; }

 private:
  HilbertGeometry geometry_;
  CMatrix entries_;
  bool hermitian_;
};

StateVector make_basis_state(const HilbertGeometry& geometry, int m, Spin s1, Spin s2);

/// Single-mode annihilation operator on Fock 0..m_max.
CMatrix annihilation(int m_max);

/// (a, a^dagger) for the CM mode, lifted to the full composite space.
/// a^dagger is truncated at the top row.
std::pair<OperatorMatrix, OperatorMatrix> ladder_operators(const HilbertGeometry& geometry);

/// exp(-i H t) for Hermitian H, built once from the eigendecomposition.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const CMatrix& hermitian);

  CMatrix matrix(double t) const;
  CVector apply(const CVector& v, double t) const;
  const Eigen::VectorXd& eigenvalues() const { return values_; }

 private:
  Eigen::VectorXd values_;
  CMatrix vectors_;
};

/// exp(i eta (a + a^dagger)) on Fock 0..m_max.
CMatrix displacement_operator(double eta, int m_max);

/// <m| exp(i eta (a^dagger + a)) |n>, from the truncated matrix exponential.
/// Throws TruncationError if raising m_max by 10 moves the result by more
/// than 1e-9.
cd displacement_matrix_element(double eta, int m, int n, int m_max);

/// Default CM truncation: highest occupied Fock level + |k1| + 20.
inline int default_m_max(int m_work, int sideband_magnitude) {
  return m_work + sideband_magnitude + 20;
}

/// max |U^dagger U - I|.
double unitarity_defect(const CMatrix& u);

}  // namespace pairgate
