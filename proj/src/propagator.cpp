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

#include "pairgate/propagator.hpp"

#include "pairgate/errors.hpp"
#include "pairgate/rabi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

namespace pairgate {

namespace {

cd ipow_minus_i(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

cd expi(double phi) { return std::polar(1.0, phi); }

// sin(r t) / r, continuous through r = 0.
double sinc_time(double r, double t) {
  const double x = r * t;
  if (std::abs(x) < 1e-8) return t * (1.0 - x * x / 6.0);
  return std::sin(x) / r;
}

// <partner|H|active> / alpha1 for the sideband drive on ion 1.
cd sideband_phase(const PulsePair& p) {
  const int k = p.sideband_magnitude();
  if (p.red()) return ipow_minus_i(k) * expi(p.phase1);
  return std::conj(ipow_minus_i(k)) * expi(-p.phase1);
}

void fill_exact(AnalyticCoefficients& c, const PulsePair& p, double t) {
  const double am = 0.5 * (c.alpha2 - c.gamma2);
  const double r = c.branch_radius;
  const double s = sinc_time(r, t);
  const double cr = std::cos(r * t);
  const double th = c.carrier_mean * t;
  const double ct = std::cos(th);
  const double st = std::sin(th);
  const cd w = sideband_phase(p);
  const cd e1 = -kI * c.alpha1 * w * s * ct;
  const double diag = cr * ct - am * s * st;
  const double swap = cr * st + am * s * ct;
  c.E = {e1, -c.alpha1 * w * s * st * expi(-p.phase2), diag, -kI * expi(-p.phase2) * swap};
  c.F = {-c.alpha1 * w * s * st * expi(p.phase2), e1, -kI * expi(p.phase2) * swap, diag};
}

void fill_tabulated(AnalyticCoefficients& c, const PulsePair& p, double t) {
  if (c.Lambda <= 0.0 || c.Delta / c.Lambda < kDegenerateSplitting) {
    throw DegenerateSplitting("tabulated coefficients need Delta > 0 (Delta/Lambda = " +
                              std::to_string(c.Lambda > 0.0 ? c.Delta / c.Lambda : 0.0) + ")");
  }
  const double zscale = 1e-14 * c.Lambda;
  if (std::abs(c.zeta_plus) < zscale || std::abs(c.zeta_minus) < zscale || c.lambda_plus == 0.0) {
    throw DegenerateSplitting("tabulated coefficients divide by zeta_+- = 0");
  }
  const int k = p.sideband_magnitude();
  const double sp = std::sin(c.lambda_plus * t);
  const double sm = std::sin(c.lambda_minus * t);
  const double cp = std::cos(c.lambda_plus * t);
  const double cm = std::cos(c.lambda_minus * t);
  const double r2d = c.rho * c.rho / c.Delta;
  const double pre = (c.alpha1 * c.rho * c.rho + c.gamma2 * c.zeta_plus * c.rho) /
                     (c.lambda_plus * c.zeta_plus * c.Delta);
  const double e3 = r2d * (cp / c.zeta_plus - cm / c.zeta_minus);
  const double sz = r2d * (sp / c.zeta_plus - sm / c.zeta_minus);
  c.E = {ipow_minus_i(k + 1) * expi(p.phase1) / c.Delta * (sp - sm),
         ipow_minus_i(k) * expi(p.phase1 - p.phase2) * pre * (cp - cm), cd(e3),
         -kI * expi(-p.phase2) * sz};
  c.F = {ipow_minus_i(k) * expi(p.phase1 + p.phase2) * (c.rho / c.Delta) * (cp - cm),
         ipow_minus_i(k + 1) * expi(p.phase1) * pre * (sp - sm), -kI * expi(p.phase2) * sz,
         cd(e3)};
}

// Applies the block map to one component and accumulates into `out`.
struct BlockEvolver {
  const HilbertGeometry& geometry;
  const PulsePair& pulses;
  double t;
  CoefficientForm form;
  std::map<int, AnalyticCoefficients> cache;

  const AnalyticCoefficients& at(int m) {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, compute_coefficients(pulses, m, t, form)).first;
    return it->second;
  }

  std::size_t idx(int m, std::size_t spec, Spin s1, Spin s2) const {
    return ((static_cast<std::size_t>(m) * geometry.spectator_configurations() + spec) * 2 +
            static_cast<std::size_t>(s1)) * 2 +
           static_cast<std::size_t>(s2);
  }

  void accumulate(std::size_t in, cd amp, CVector& out) {
    const int m = geometry.fock_of(in);
    const std::size_t spec = geometry.spectator_of(in);
    const Spin s1 = geometry.spin1_of(in);
    const Spin s2 = geometry.spin2_of(in);
    const int km = pulses.sideband_magnitude();
    if (m >= km) {
      throw SidebandOrderError("component at Fock " + std::to_string(m) +
                               " violates |k1| > m for k1 = " + std::to_string(pulses.sideband1));
    }
    if (m + km > geometry.m_max()) {
      throw OutOfRange("evolution needs Fock level " + std::to_string(m + km) +
                       " beyond m_max = " + std::to_string(geometry.m_max()));
    }
    const AnalyticCoefficients& c = at(m);
    const Spin active = pulses.active_spin();
    auto put = [&](int mm, Spin a, Spin b, cd v) {
      out(static_cast<Eigen::Index>(idx(mm, spec, a, b))) += amp * v;
    };
    if (s1 != active) {
      const double ang = c.alpha2 * t;
      const cd flip_phase = s2 == Spin::g ? expi(-pulses.phase2) : expi(pulses.phase2);
      put(m, s1, s2, std::cos(ang));
      put(m, s1, flip(s2), -kI * flip_phase * std::sin(ang));
      return;
    }
    const auto& coef = s2 == Spin::g ? c.E : c.F;
    const Spin inert = flip(active);
    put(m + km, inert, Spin::g, coef[0]);
    put(m + km, inert, Spin::e, coef[1]);
    put(m, active, Spin::g, coef[2]);
    put(m, active, Spin::e, coef[3]);
  }
};

}  // namespace

void PulsePair::validate() const {
  if (omega1 < 0.0 || omega2 < 0.0) throw OutOfRange("Rabi strengths must be non-negative");
  if (sideband1 == 0) throw SidebandOrderError("ion-1 sideband order k1 must be nonzero");
  if (trap_frequency && *trap_frequency <= 0.0) throw OutOfRange("trap frequency must be positive");
  if (!std::isfinite(eta1) || !std::isfinite(eta2) || !std::isfinite(phase1) ||
      !std::isfinite(phase2)) {
    throw OutOfRange("pulse parameters must be finite");
  }
}

double AnalyticCoefficients::e_norm2() const {
  double s = 0.0;
  for (const cd& v : E) s += std::norm(v);
  return s;
}

double AnalyticCoefficients::f_norm2() const {
  double s = 0.0;
  for (const cd& v : F) s += std::norm(v);
  return s;
}

cd AnalyticCoefficients::overlap() const {
  cd s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += E[i] * std::conj(F[i]);
  return s;
}

AnalyticCoefficients compute_coefficients(const PulsePair& pulses, int m, double t,
                                          CoefficientForm form) {
  pulses.validate();
  const int km = pulses.sideband_magnitude();
  if (m < 0 || km <= m) {
    throw SidebandOrderError("closed-form evolution needs |k1| > m (k1 = " +
                             std::to_string(pulses.sideband1) + ", m = " + std::to_string(m) + ")");
  }
  AnalyticCoefficients c;
  c.form = form;
  c.fock_index = m;
  c.time = t;
  c.alpha1 = generalized_rabi({pulses.omega1, pulses.eta1, m, km});
  c.alpha2 = generalized_rabi({pulses.omega2, pulses.eta2, m, 0});
  c.gamma2 = generalized_rabi({pulses.omega2, pulses.eta2, m + km, 0});

  const double a1sq = c.alpha1 * c.alpha1;
  c.rho = c.alpha1 * (c.alpha2 + c.gamma2);
  c.Lambda = c.alpha2 * c.alpha2 + c.gamma2 * c.gamma2 + 2.0 * a1sq;
  const double det = c.alpha2 * c.gamma2 - a1sq;
  c.Delta = std::sqrt(std::max(0.0, c.Lambda * c.Lambda - 4.0 * det * det));
  c.lambda_plus = std::sqrt(0.5 * (c.Lambda + c.Delta));
  c.lambda_minus = std::sqrt(std::max(0.0, 0.5 * (c.Lambda - c.Delta)));
  c.zeta_plus = c.lambda_plus * c.lambda_plus - c.alpha2 * c.alpha2 - a1sq;
  c.zeta_minus = c.lambda_minus * c.lambda_minus - c.alpha2 * c.alpha2 - a1sq;
  c.branch_radius = std::hypot(c.alpha1, 0.5 * (c.alpha2 - c.gamma2));
  c.carrier_mean = 0.5 * (c.alpha2 + c.gamma2);

  if (pulses.trap_frequency) {
    c.weak_excitation =
        std::max(pulses.omega1, pulses.omega2) / *pulses.trap_frequency < kWeakExcitationRatio;
  }

  if (form == CoefficientForm::exact) {
    fill_exact(c, pulses, t);
  } else {
    fill_tabulated(c, pulses, t);
  }
  return c;
}

CVector propagate_amplitudes(const HilbertGeometry& geometry, const CVector& amplitudes,
                             const PulsePair& pulses, double t, CoefficientForm form) {
  pulses.validate();
  if (static_cast<std::size_t>(amplitudes.size()) != geometry.dimension()) {
    throw Error("amplitude vector size does not match geometry");
  }
  BlockEvolver evolver{geometry, pulses, t, form, {}};
  CVector out = CVector::Zero(amplitudes.size());
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    if (amplitudes(i) != cd(0.0)) evolver.accumulate(static_cast<std::size_t>(i), amplitudes(i), out);
  }
  return out;
}

StateVector evolve_basis(const HilbertGeometry& geometry, int m, Spin s1, Spin s2,
                         const PulsePair& pulses, double t, CoefficientForm form) {
  return evolve(make_basis_state(geometry, m, s1, s2), pulses, t, form);
}

StateVector evolve(const StateVector& state, const PulsePair& pulses, double t,
                   CoefficientForm form) {
  CVector out = propagate_amplitudes(state.geometry(), state.amplitudes(), pulses, t, form);
  return StateVector(state.geometry(), std::move(out));
}

StateVector carrier_rotation(const StateVector& state, int ion, double omega, double eta,
                             double phase, double t) {
  if (ion != 1 && ion != 2) throw OutOfRange("ion must be 1 or 2");
  const HilbertGeometry& geom = state.geometry();
  const CVector& in = state.amplitudes();
  CVector out = CVector::Zero(in.size());
  for (Eigen::Index i = 0; i < in.size(); ++i) {
    if (in(i) == cd(0.0)) continue;
    const auto idx = static_cast<std::size_t>(i);
    const int m = geom.fock_of(idx);
    const double ang = generalized_rabi({omega, eta, m, 0}) * t;
    const Spin target = ion == 1 ? geom.spin1_of(idx) : geom.spin2_of(idx);
    const std::size_t stride = ion == 1 ? 2 : 1;
    const std::size_t partner =
        target == Spin::g ? idx + stride : idx - stride;  // same index with the ion flipped
    const cd flip_phase = target == Spin::g ? expi(-phase) : expi(phase);
    out(i) += in(i) * std::cos(ang);
    out(static_cast<Eigen::Index>(partner)) += in(i) * (-kI * flip_phase * std::sin(ang));
  }
  return StateVector(geom, std::move(out));
}

std::vector<PropagationSample> sample_valid_tuples(std::size_t count, std::uint64_t seed,
                                                   const SampleDomain& d) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kdist(1, d.max_sideband);
  std::uniform_real_distribution<double> eta(d.eta_min, d.eta_max);
  std::uniform_real_distribution<double> ratio(d.ratio_min, d.ratio_max);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> time(0.0, d.time_max);
  std::vector<PropagationSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    PropagationSample s;
    s.pulses.sideband1 = kdist(rng);
    s.fock_index = std::uniform_int_distribution<int>(0, s.pulses.sideband1 - 1)(rng);
    s.pulses.eta1 = eta(rng);
    s.pulses.eta2 = eta(rng);
    s.pulses.omega2 = 1.0;
    s.pulses.omega1 = ratio(rng);
    s.pulses.phase1 = phase(rng);
    s.pulses.phase2 = phase(rng);
    s.time = time(rng);
    out.push_back(s);
  }
  return out;
}

std::vector<std::string> CoefficientDiscrepancy::agreeing(double tol) const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < 4; ++i) {
    if (max_diff_e[i] <= tol) names.push_back("E" + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (max_diff_f[i] <= tol) names.push_back("F" + std::to_string(i + 1));
  }
  return names;
}

CoefficientDiscrepancy compare_coefficient_forms(std::span<const PropagationSample> samples) {
  CoefficientDiscrepancy d;
  for (const auto& s : samples) {
    const auto exact = compute_coefficients(s.pulses, s.fock_index, s.time, CoefficientForm::exact);
    d.exact_norm_defect = std::max({d.exact_norm_defect, std::abs(exact.e_norm2() - 1.0),
                                    std::abs(exact.f_norm2() - 1.0)});
    d.exact_overlap_defect = std::max(d.exact_overlap_defect, std::abs(exact.overlap()));
    AnalyticCoefficients tab;
    try {
      tab = compute_coefficients(s.pulses, s.fock_index, s.time, CoefficientForm::tabulated);
    } catch (const DegenerateSplitting&) {
      ++d.skipped_degenerate;
      continue;
    }
    ++d.samples;
    d.tabulated_norm_defect = std::max({d.tabulated_norm_defect, std::abs(tab.e_norm2() - 1.0),
                                        std::abs(tab.f_norm2() - 1.0)});
    d.tabulated_overlap_defect = std::max(d.tabulated_overlap_defect, std::abs(tab.overlap()));
    for (std::size_t i = 0; i < 4; ++i) {
      d.max_diff_e[i] = std::max(d.max_diff_e[i], std::abs(tab.E[i] - exact.E[i]));
      d.max_diff_f[i] = std::max(d.max_diff_f[i], std::abs(tab.F[i] - exact.F[i]));
    }
  }
  return d;
}

}  // namespace pairgate
