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

#include "pairgate/oracle.hpp"

#include "pairgate/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <string>

namespace pairgate {

namespace {

CMatrix sigma_plus() {
  CMatrix s = CMatrix::Zero(2, 2);
  s(1, 0) = 1.0;  // |e><g|
  return s;
}

CMatrix spin_raise(int ion) {
  const CMatrix id = CMatrix::Identity(2, 2);
  return ion == 1 ? CMatrix(Eigen::kroneckerProduct(sigma_plus(), id))
                  : CMatrix(Eigen::kroneckerProduct(id, sigma_plus()));
}

// e^{-eta^2/2} sum_n (i eta)^{2n+k} a^dag^n a^{n+k} / (n! (n+k)!) on Fock 0..dim-1.
CMatrix sideband_series(double eta, int k, int dim) {
  const CMatrix a = annihilation(dim - 1);
  const CMatrix adag = a.adjoint();
  const int shift = k < 0 ? -k : 0;  // first n with n + k >= 0
  CMatrix adag_pow = CMatrix::Identity(dim, dim);
  for (int i = 0; i < shift; ++i) adag_pow = adag_pow * adag;
  CMatrix a_pow = CMatrix::Identity(dim, dim);
  for (int i = 0; i < shift + k; ++i) a_pow = a_pow * a;

  CMatrix sum = CMatrix::Zero(dim, dim);
  for (int n = shift; n + k < dim && n < dim; ++n) {
    const int power = 2 * n + k;
    // (i eta)^power / (n! (n+k)!)
    cd coeff = 1.0;
    switch (((power % 4) + 4) % 4) {
      case 0: coeff = 1.0; break;
      case 1: coeff = kI; break;
      case 2: coeff = -1.0; break;
      default: coeff = -kI; break;
    }
    double mag = 0.0;
    if (power > 0) {
      if (eta == 0.0) {
        mag = 0.0;
      } else {
        mag = std::exp(power * std::log(std::abs(eta)) - std::lgamma(n + 1.0) -
                       std::lgamma(n + k + 1.0));
        if (eta < 0.0 && (power % 2) == 1) mag = -mag;
      }
    } else {
      mag = 1.0;
    }
    sum += (coeff * mag) * (adag_pow * a_pow);
    adag_pow = adag_pow * adag;
    a_pow = a_pow * a;
  }
  return std::exp(-0.5 * eta * eta) * sum;
}

CMatrix identity(std::size_t n) {
  return CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

void check_spectators(const HilbertGeometry& g, std::span<const SpectatorMode> spectators) {
  if (static_cast<int>(spectators.size()) != g.n_spectator_modes()) {
    throw Error("geometry has " + std::to_string(g.n_spectator_modes()) +
                " spectator modes but " + std::to_string(spectators.size()) + " were supplied");
  }
  for (const auto& s : spectators) {
    if (s.truncation != g.spectator_m_max()) {
      throw Error("spectator truncation must match the geometry's spectator_m_max");
    }
    if (s.frequency <= 1.0) throw OutOfRange("spectator modes must lie above the CM mode");
  }
}

// Kronecker product over spectator modes of the per-mode factor for ion j.
template <typename PerMode>
CMatrix spectator_product(const HilbertGeometry& g, std::span<const SpectatorMode> spectators,
                          PerMode per_mode) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& s : spectators) {
    out = Eigen::kroneckerProduct(out, per_mode(s, g.spectator_m_max() + 1)).eval();
  }
  return out;
}

double ld_of(const SpectatorMode& s, int ion) { return ion == 1 ? s.ld1 : s.ld2; }

// Diagonal of the frame generator G = nu n_cm + sum_l nu_l n_l + sum_j (k_j nu / 2) sz_j.
Eigen::VectorXd frame_generator(const DriveSet& drives, const TrapModel& trap,
                                const HilbertGeometry& g) {
  Eigen::VectorXd diag(static_cast<Eigen::Index>(g.dimension()));
  const std::size_t base = static_cast<std::size_t>(g.spectator_m_max()) + 1;
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    double e = trap.nu * g.fock_of(i);
    std::size_t spec = g.spectator_of(i);
    for (int l = g.n_spectator_modes() - 1; l >= 0; --l) {
      e += trap.nu * trap.spectators[static_cast<std::size_t>(l)].frequency *
           static_cast<double>(spec % base);
      spec /= base;
    }
    const double sz1 = g.spin1_of(i) == Spin::e ? 1.0 : -1.0;
    const double sz2 = g.spin2_of(i) == Spin::e ? 1.0 : -1.0;
    e += 0.5 * trap.nu * (drives[0].sideband * sz1 + drives[1].sideband * sz2);
    diag(static_cast<Eigen::Index>(i)) = e;
  }
  return diag;
}

// H_c: the full Hamiltonian at t = 0.
CMatrix comoving_hamiltonian(const DriveSet& drives, const TrapModel& trap,
                             const HilbertGeometry& g) {
  check_spectators(g, trap.spectators);
  const auto dim = static_cast<Eigen::Index>(g.dimension());
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int ion = 1; ion <= 2; ++ion) {
    const LaserDrive& d = drives[static_cast<std::size_t>(ion - 1)];
    if (d.omega == 0.0) continue;
    const CMatrix disp_cm = displacement_operator(d.eta, g.m_max());
    const CMatrix disp_spec = spectator_product(
        g, trap.spectators,
        [ion](const SpectatorMode& s, int n) { return displacement_operator(ld_of(s, ion), n - 1); });
    const CMatrix term = Eigen::kroneckerProduct(
        Eigen::kroneckerProduct(disp_cm, disp_spec).eval(), spin_raise(ion));
    h += (0.5 * d.omega) * std::polar(1.0, -d.phase) * term;
  }
  return h + h.adjoint().eval();
}

CMatrix apply_frame(const CMatrix& hc, const Eigen::VectorXd& gen, double t) {
  CMatrix out = hc;
  for (Eigen::Index a = 0; a < out.rows(); ++a) {
    for (Eigen::Index b = 0; b < out.cols(); ++b) {
      if (out(a, b) != cd(0.0)) out(a, b) *= std::polar(1.0, (gen(a) - gen(b)) * t);
    }
  }
  return out;
}

CVector step_evolve(const CMatrix& hc, const Eigen::VectorXd& gen, CVector psi, double t_final,
                    std::size_t steps, StepMethod method) {
  const double h = t_final / static_cast<double>(steps);
  const double c = std::sqrt(3.0) / 6.0;
  for (std::size_t s = 0; s < steps; ++s) {
    const double t0 = h * static_cast<double>(s);
    CMatrix k;
    if (method == StepMethod::magnus4) {
      const CMatrix h1 = apply_frame(hc, gen, t0 + (0.5 - c) * h);
      const CMatrix h2 = apply_frame(hc, gen, t0 + (0.5 + c) * h);
      k = (0.5 * h) * (h1 + h2) - kI * (std::sqrt(3.0) * h * h / 12.0) * (h2 * h1 - h1 * h2);
    } else {
      k = h * apply_frame(hc, gen, t0 + 0.5 * h);
    }
    k = 0.5 * (k + k.adjoint().eval());
    psi = SpectralPropagator(k).apply(psi, 1.0);
  }
  return psi;
}

StateVector finish(const HilbertGeometry& g, CVector out, const IntegratorConfig& cfg) {
  StateVector result(g, std::move(out));
  const double leak = result.top_population(2);
  if (leak > cfg.leak_tolerance) {
    throw TruncationError("population " + std::to_string(leak) +
                          " reached the top two Fock levels (m_max = " + std::to_string(g.m_max()) +
                          ")");
  }
  return result;
}

}  // namespace

DriveSet drives_of(const PulsePair& p) {
  p.validate();
  return {LaserDrive{p.omega1, p.eta1, p.phase1, p.sideband1},
          LaserDrive{p.omega2, p.eta2, p.phase2, 0}};
}

SpectatorMode SpectatorMode::placeholder(const PulsePair& pulses, double frequency,
                                         int truncation) {
  const double scale = std::sqrt(1.0 / frequency);
  return {frequency, pulses.eta1 * scale, pulses.eta2 * scale, truncation};
}

HilbertGeometry geometry_for(const TrapModel& trap, int m_max) {
  if (trap.spectators.empty()) return HilbertGeometry(m_max);
  const int trunc = trap.spectators.front().truncation;
  return HilbertGeometry(m_max, static_cast<int>(trap.spectators.size()), trunc);
}

OperatorMatrix effective_hamiltonian(const DriveSet& drives, const HilbertGeometry& g,
                                     std::span<const SpectatorMode> spectators,
                                     SpectatorFactor factor) {
  check_spectators(g, spectators);
  const auto dim = static_cast<Eigen::Index>(g.dimension());
  CMatrix h = CMatrix::Zero(dim, dim);
  const int fock_dim = g.m_max() + 1;
  for (int ion = 1; ion <= 2; ++ion) {
    const LaserDrive& d = drives[static_cast<std::size_t>(ion - 1)];
    if (d.omega == 0.0) continue;
    const CMatrix cm = sideband_series(d.eta, d.sideband, fock_dim);
    CMatrix spec;
    if (factor == SpectatorFactor::diagonal) {
      spec = spectator_product(g, spectators, [ion](const SpectatorMode& s, int n) {
        return sideband_series(ld_of(s, ion), 0, n);
      });
    } else {
      spec = identity(g.spectator_configurations());
    }
    const CMatrix term =
        Eigen::kroneckerProduct(Eigen::kroneckerProduct(cm, spec).eval(), spin_raise(ion));
    h += (0.5 * d.omega) * std::polar(1.0, -d.phase) * term;
  }
  CMatrix herm = h + h.adjoint().eval();
  return OperatorMatrix(g, std::move(herm), true);
}

OperatorMatrix effective_hamiltonian(const PulsePair& pulses, const HilbertGeometry& geometry) {
  return effective_hamiltonian(drives_of(pulses), geometry);
}

OperatorMatrix full_hamiltonian_at(const DriveSet& drives, const TrapModel& trap,
                                   const HilbertGeometry& g, double t) {
  if (trap.nu <= 0.0) throw OutOfRange("trap frequency must be positive");
  const CMatrix hc = comoving_hamiltonian(drives, trap, g);
  CMatrix ht = apply_frame(hc, frame_generator(drives, trap, g), t);
  ht = 0.5 * (ht + ht.adjoint().eval());
  return OperatorMatrix(g, std::move(ht), true);
}

OperatorMatrix full_hamiltonian_at(const PulsePair& pulses, const TrapModel& trap,
                                   const HilbertGeometry& g, double t) {
  return full_hamiltonian_at(drives_of(pulses), trap, g, t);
}

double default_step(const DriveSet& drives, const TrapModel& trap, const HilbertGeometry& g) {
  const CMatrix h = effective_hamiltonian(drives, g, trap.spectators).entries();
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<CMatrix>(h, Eigen::EigenvaluesOnly)
                                 .eigenvalues();
  const double lambda_max = ev.cwiseAbs().maxCoeff();
  double period = 2.0 * kPi / trap.nu;
  if (lambda_max > 0.0) period = std::min(period, 2.0 * kPi / lambda_max);
  return period / 400.0;
}

StateVector integrate(HamiltonianSource source, const DriveSet& drives, const TrapModel& trap,
                      const StateVector& state, double t_final, const IntegratorConfig& cfg) {
  const HilbertGeometry& g = state.geometry();
  if (t_final < 0.0) throw OutOfRange("t_final must be non-negative");
  if (t_final == 0.0) return state;

  if (source == HamiltonianSource::effective) {
    const OperatorMatrix h = effective_hamiltonian(drives, g, trap.spectators, cfg.spectator_factor);
    return finish(g, SpectralPropagator(h.entries()).apply(state.amplitudes(), t_final), cfg);
  }

  if (trap.nu <= 0.0) throw OutOfRange("trap frequency must be positive");
  const CMatrix hc = comoving_hamiltonian(drives, trap, g);
  const Eigen::VectorXd gen = frame_generator(drives, trap, g);

  if (cfg.method == StepMethod::comoving_frame) {
    CMatrix static_h = hc;
    static_h.diagonal() += gen.cast<cd>();
    CVector chi = SpectralPropagator(static_h).apply(state.amplitudes(), t_final);
    for (Eigen::Index i = 0; i < chi.size(); ++i) chi(i) *= std::polar(1.0, gen(i) * t_final);
    return finish(g, std::move(chi), cfg);
  }

  const double dt = cfg.dt > 0.0 ? cfg.dt : default_step(drives, trap, g);
  const auto steps = static_cast<std::size_t>(std::ceil(t_final / dt));
  CVector fine = step_evolve(hc, gen, state.amplitudes(), t_final, steps, cfg.method);
  if (cfg.check_convergence) {
    const std::size_t coarse_steps = std::max<std::size_t>(1, steps / 2);
    const CVector coarse = step_evolve(hc, gen, state.amplitudes(), t_final, coarse_steps, cfg.method);
    const double inf = 1.0 - std::norm(fine.dot(coarse));
    if (inf > 10.0 * cfg.convergence_tolerance) {
      throw ConvergenceError("step doubling changed the state by infidelity " +
                             std::to_string(inf) + "; reduce dt");
    }
  }
  return finish(g, std::move(fine), cfg);
}

StateVector integrate(HamiltonianSource source, const PulsePair& pulses, const TrapModel& trap,
                      const StateVector& state, double t_final, const IntegratorConfig& cfg) {
  return integrate(source, drives_of(pulses), trap, state, t_final, cfg);
}

}  // namespace pairgate
