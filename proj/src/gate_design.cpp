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

#include "pairgate/gate_design.hpp"

#include "pairgate/errors.hpp"
#include "pairgate/parallel.hpp"
#include "pairgate/rabi.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <tuple>

namespace pairgate {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double quarter_angle(QuarterPhase q) { return static_cast<int>(q) * 0.5 * kPi; }
double quarter_sine(QuarterPhase q) { return q == QuarterPhase::quarter ? 1.0 : -1.0; }

// Couplings and branch frequencies of the 4x4 block, without the E/F coefficients.
struct Branches {
  double alpha2 = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double radius = 0.0;
  double mean = 0.0;
};

Branches branches(double eta1, double eta2, double ratio, int k, int m) {
  const int km = k < 0 ? -k : k;
  const double a1 = generalized_rabi({ratio, eta1, m, km});
  const double a2 = generalized_rabi({1.0, eta2, m, 0});
  const double g2 = generalized_rabi({1.0, eta2, m + km, 0});
  Branches b;
  b.alpha2 = a2;
  b.radius = std::hypot(a1, 0.5 * (a2 - g2));
  b.mean = 0.5 * (a2 + g2);
  b.lambda_plus = b.radius + std::abs(b.mean);
  b.lambda_minus = std::abs(b.radius - std::abs(b.mean));
  return b;
}

struct Targets {
  double plus;
  double minus;
};

Targets targets_of(const ResonanceIntegers& n) { return {n.plus_target(), n.minus_target()}; }

// Phase mismatch (lambda_+ tau - T_+, lambda_- tau - T_-) with tau = 2 pi p / |alpha2|.
std::optional<Eigen::Vector2d> phase_mismatch(double eta1, double eta2, double ratio, int k, int m,
                                              int p, Targets t) {
  const Branches b = branches(eta1, eta2, ratio, k, m);
  if (std::abs(b.alpha2) < 1e-12) return std::nullopt;
  const double tau = kTwoPi * p / std::abs(b.alpha2);
  return Eigen::Vector2d(b.lambda_plus * tau - t.plus, b.lambda_minus * tau - t.minus);
}

// Bisection along one axis for a sign change of one mismatch component.
std::optional<Eigen::Vector2d> axis_bisection(const Eigen::Vector2d& x, int axis, int comp,
                                              double ratio, int k, int m, int p, Targets t) {
  auto f = [&](double v) -> std::optional<double> {
    Eigen::Vector2d y = x;
    y(axis) = v;
    const auto r = phase_mismatch(y(0), y(1), ratio, k, m, p, t);
    if (!r) return std::nullopt;
    return (*r)(comp);
  };
  const double width = 0.25;
  const int samples = 26;
  std::optional<std::pair<double, double>> bracket;
  double best_dist = 1e300;
  std::optional<double> prev_v;
  std::optional<double> prev_f;
  for (int i = 0; i <= samples; ++i) {
    const double v = x(axis) - width + 2.0 * width * i / samples;
    const auto fv = f(v);
    if (fv && prev_f && (*fv) * (*prev_f) <= 0.0) {
      const double dist = std::abs(0.5 * (v + *prev_v) - x(axis));
      if (dist < best_dist) {
        best_dist = dist;
        bracket = std::make_pair(*prev_v, v);
      }
    }
    prev_v = v;
    prev_f = fv;
  }
  if (!bracket) return std::nullopt;
  double lo = bracket->first;
  double hi = bracket->second;
  auto flo = f(lo);
  for (int i = 0; i < 80 && flo; ++i) {
    const double mid = 0.5 * (lo + hi);
    const auto fm = f(mid);
    if (!fm) return std::nullopt;
    if ((*fm) * (*flo) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  Eigen::Vector2d y = x;
  y(axis) = 0.5 * (lo + hi);
  return y;
}

GateSolution finish_solution(GateCandidate c, int iterations) {
  GateSolution s;
  static_cast<GateCandidate&>(s) = c;
  s.residuals = condition_residuals(c);
  s.bus_defect = bus_return_defect(c);
  s.iterations = iterations;
  return s;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd x;
  x << 0.0, 1.0, 1.0, 0.0;
  return x;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

}  // namespace

double ResonanceIntegers::plus_target() const { return kTwoPi * q_plus + quarter_angle(plus_phase); }
double ResonanceIntegers::minus_target() const {
  return kTwoPi * q_minus + quarter_angle(minus_phase);
}

PulsePair GateCandidate::pulses(double phase1, double phase2) const {
  PulsePair p;
  p.omega1 = omega_ratio;
  p.omega2 = 1.0;
  p.eta1 = eta1;
  p.eta2 = eta2;
  p.phase1 = phase1;
  p.phase2 = phase2;
  p.sideband1 = k1;
  return p;
}

double GateSolution::max_residual() const {
  return *std::max_element(residuals.begin(), residuals.end());
}

ConditionResiduals condition_residuals(const GateCandidate& c) {
  const AnalyticCoefficients co = compute_coefficients(c.pulses(), c.m, c.omega_tau);
  const double t = c.omega_tau;
  return {std::abs(std::cos(co.alpha2 * t) - 1.0),
          std::abs(std::sin(co.lambda_plus * t) - quarter_sine(c.integers.plus_phase)),
          std::abs(std::sin(co.lambda_minus * t) - quarter_sine(c.integers.minus_phase))};
}

double bus_return_defect(const GateCandidate& c) {
  const AnalyticCoefficients co = compute_coefficients(c.pulses(), c.m, c.omega_tau);
  return std::max(std::abs(std::sin(co.branch_radius * c.omega_tau)),
                  std::abs(std::cos(co.carrier_mean * c.omega_tau)));
}

GateSolution solve_gate(int k1, int m, double ratio, const ResonanceIntegers& n, double seed_eta1,
                        double seed_eta2, const SolverOptions& opt) {
  const int km = k1 < 0 ? -k1 : k1;
  if (k1 == 0 || m < 0 || km <= m) {
    throw SidebandOrderError("gate conditions need |k1| > m >= 0");
  }
  if (n.p < 1 || n.q_plus < 0 || n.q_minus < 0) throw OutOfRange("resonance integers out of range");
  if (!(ratio > 0.0)) throw OutOfRange("Omega1/Omega2 must be positive");
  const Targets t = targets_of(n);

  auto mismatch = [&](const Eigen::Vector2d& x) {
    return phase_mismatch(x(0), x(1), ratio, k1, m, n.p, t);
  };

  Eigen::Vector2d x(seed_eta1, seed_eta2);
  auto fx = mismatch(x);
  if (!fx) throw ConvergenceError("carrier coupling vanishes at the seed (Laguerre zero)");

  int it = 0;
  for (; it < opt.max_iterations && fx->norm() >= opt.tolerance; ++it) {
    Eigen::Matrix2d jac;
    bool jac_ok = true;
    for (int a = 0; a < 2; ++a) {
      Eigen::Vector2d xp = x;
      Eigen::Vector2d xm = x;
      xp(a) += opt.jacobian_step;
      xm(a) -= opt.jacobian_step;
      const auto fp = mismatch(xp);
      const auto fm = mismatch(xm);
      if (!fp || !fm) {
        jac_ok = false;
        break;
      }
      jac.col(a) = (*fp - *fm) / (2.0 * opt.jacobian_step);
    }
    bool stepped = false;
    if (jac_ok && std::abs(jac.determinant()) > 1e-12 * jac.squaredNorm()) {
      Eigen::Vector2d dx = -jac.partialPivLu().solve(*fx);
      const double cap = 0.5;
      if (dx.norm() > cap) dx *= cap / dx.norm();
      double damp = 1.0;
      for (int h = 0; h < 40; ++h, damp *= 0.5) {
        const Eigen::Vector2d y = x + damp * dx;
        const auto fy = mismatch(y);
        if (fy && fy->norm() < fx->norm()) {
          x = y;
          fx = fy;
          stepped = true;
          break;
        }
      }
    }
    if (!stepped) {
      // Jacobian failure: solve each component along its own axis, keep any improvement.
      const double before = fx->norm();
      for (int axis = 0; axis < 2; ++axis) {
        for (int comp = 0; comp < 2; ++comp) {
          const auto y = axis_bisection(x, axis, comp, ratio, k1, m, n.p, t);
          if (!y) continue;
          const auto fy = mismatch(*y);
          if (fy && fy->norm() < fx->norm()) {
            x = *y;
            fx = fy;
          }
        }
      }
      if (!(fx->norm() < before)) {
        throw ConvergenceError("gate solver stalled at eta = (" + std::to_string(x(0)) + ", " +
                               std::to_string(x(1)) + "), |f| = " + std::to_string(before));
      }
    }
  }
  if (fx->norm() >= opt.tolerance) {
    throw ConvergenceError("gate solver did not converge in " + std::to_string(opt.max_iterations) +
                           " iterations (|f| = " + std::to_string(fx->norm()) + ")");
  }

  GateCandidate c;
  c.eta1 = x(0);
  c.eta2 = x(1);
  c.omega_ratio = ratio;
  c.k1 = k1;
  c.m = m;
  c.integers = n;
  c.omega_tau = kTwoPi * n.p / std::abs(branches(x(0), x(1), ratio, k1, m).alpha2);
  return finish_solution(c, it);
}

RealizedGate realized_gate(const GateSolution& s, double phase2, CoefficientForm form,
                           double phase1, double omega_tau) {
  const double t = omega_tau < 0.0 ? s.omega_tau : omega_tau;
  const int km = s.k1 < 0 ? -s.k1 : s.k1;
  const HilbertGeometry g(s.m + km);
  const PulsePair pulses = s.pulses(phase1, phase2);
  RealizedGate out;
  out.spin = Eigen::Matrix4cd::Zero();
  out.bus_retention = 1.0;
  for (int col = 0; col < 4; ++col) {
    const Spin s1 = static_cast<Spin>(col / 2);
    const Spin s2 = static_cast<Spin>(col % 2);
    const CVector in = make_basis_state(g, s.m, s1, s2).amplitudes();
    const CVector img = propagate_amplitudes(g, in, pulses, t, form);
    double kept = 0.0;
    for (int row = 0; row < 4; ++row) {
      const cd a = img(static_cast<Eigen::Index>(
          g.index(s.m, static_cast<Spin>(row / 2), static_cast<Spin>(row % 2))));
      out.spin(row, col) = a;
      kept += std::norm(a);
    }
    out.bus_retention = std::min(out.bus_retention, kept);
  }
  out.unitarity_defect = unitarity_defect(CMatrix(out.spin));
  return out;
}

int gate_sign(const GateSolution& s, CoefficientForm form) {
  const AnalyticCoefficients co = compute_coefficients(s.pulses(), s.m, s.omega_tau, form);
  return (kI * co.E[3]).real() >= 0.0 ? 1 : -1;
}

Eigen::Matrix4cd ideal_gate(double phase2, int sign, bool red) {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  const int active = red ? 2 : 0;
  const int idle = red ? 0 : 2;
  u(idle, idle) = 1.0;
  u(idle + 1, idle + 1) = 1.0;
  const cd s = -kI * static_cast<double>(sign);
  u(active + 1, active) = s * std::polar(1.0, -phase2);
  u(active, active + 1) = s * std::polar(1.0, phase2);
  return u;
}

Eigen::Matrix4cd cnot_matrix() {
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(3, 2) = 1.0;
  c(2, 3) = 1.0;
  return c;
}

CnotCorrection cnot_equivalence(const Eigen::Matrix4cd& gate) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  auto off_weight = [&](int b) {
    return std::abs(gate(b, b + 1)) + std::abs(gate(b + 1, b));
  };
  // Control on e1 unless the g1 block is the one that flips qubit 2.
  const bool swap_control = off_weight(0) > off_weight(2);
  const Eigen::Matrix2cd x1 = swap_control ? pauli_x() : id;
  const Eigen::Matrix4cd g = kron2(x1, id) * gate * kron2(x1, id);

  const Eigen::Matrix2cd a = g.block<2, 2>(0, 0);
  const Eigen::Matrix2cd b = g.block<2, 2>(2, 2);

  cd c = 1.0;
  cd phase = 1.0;
  Eigen::Matrix2cd left2 = id;
  if (std::abs(a.determinant()) > 1e-12) {
    const Eigen::Matrix2cd mab = a.inverse() * b;
    const cd x = mab(0, 1);
    const cd y = mab(1, 0);
    if (std::abs(x) > 1e-12 && std::abs(y) > 1e-12) {
      // Corrections must be unitary, otherwise they would absorb population loss.
      c = std::sqrt(y / x);
      c /= std::abs(c);
      phase = 1.0 / (x * c);
      phase /= std::abs(phase);
    }
    Eigen::Matrix2cd r2 = id;
    r2(1, 1) = c;
    const Eigen::JacobiSVD<Eigen::Matrix2cd> svd((a * r2).inverse(),
                                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
    left2 = svd.matrixU() * svd.matrixV().adjoint();
  }

  CnotCorrection out;
  out.right2 = id;
  out.right2(1, 1) = c;
  out.left2 = left2;
  Eigen::Matrix2cd l1 = id;
  l1(1, 1) = phase;
  out.left1 = l1 * x1;
  out.right1 = x1;
  const Eigen::Matrix4cd mapped = kron2(out.left1, out.left2) * gate * kron2(out.right1, out.right2);
  out.residual = (mapped - cnot_matrix()).cwiseAbs().maxCoeff();
  return out;
}

double success_probability(const GateSolution& s, double t) {
  const Branches b = branches(s.eta1, s.eta2, s.omega_ratio, s.k1, s.m);
  const double c = std::cos(b.alpha2 * t);
  const double sp = std::sin(b.lambda_plus * t);
  const double sm = std::sin(b.lambda_minus * t);
  return std::min({c * c, sp * sp, sm * sm});
}

double overlap_probability(const GateSolution& s, double t, CoefficientForm form) {
  const RealizedGate g = realized_gate(s, 0.0, form, 0.0, t);
  const Eigen::Matrix4cd ideal = ideal_gate(0.0, gate_sign(s, form), s.k1 > 0);
  double worst = 1.0;
  for (int col = 0; col < 4; ++col) {
    worst = std::min(worst, std::norm(ideal.col(col).dot(g.spin.col(col))));
  }
  return worst;
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::omega_tau: return "omega_tau";
    case SweepParameter::eta1: return "eta1";
    case SweepParameter::eta2: return "eta2";
    case SweepParameter::omega_ratio: return "omega_ratio";
  }
  return "?";
}

SweepParameter sweep_parameter_from_string(const std::string& name) {
  for (auto p : {SweepParameter::omega_tau, SweepParameter::eta1, SweepParameter::eta2,
                 SweepParameter::omega_ratio}) {
    if (to_string(p) == name) return p;
  }
  throw ConfigError("unknown sweep parameter '" + name +
                    "' (expected omega_tau, eta1, eta2 or omega_ratio)");
}

double SweepResult::min_success() const {
  double v = 1.0;
  for (const auto& r : rows) v = std::min(v, r.success);
  return v;
}

SweepResult robustness_sweep(const GateSolution& s, SweepParameter parameter, double lo, double hi,
                             int steps, int jobs) {
  if (!(lo <= hi)) throw OutOfRange("sweep range must satisfy lo <= hi");
  const bool single = lo == hi;
  if (!single && steps < 2) throw OutOfRange("a sweep needs at least 2 steps");
  const std::size_t n = single ? 1 : static_cast<std::size_t>(steps);

  SweepResult out;
  out.parameter = parameter;
  out.lo = lo;
  out.hi = hi;
  out.rows.resize(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    const double v = single ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    GateSolution point = s;
    switch (parameter) {
      case SweepParameter::omega_tau: point.omega_tau = v; break;
      case SweepParameter::eta1: point.eta1 = v; break;
      case SweepParameter::eta2: point.eta2 = v; break;
      case SweepParameter::omega_ratio: point.omega_ratio = v; break;
    }
    SweepRow row;
    row.value = v;
    row.success = success_probability(point, point.omega_tau);
    row.overlap_exact = overlap_probability(point, point.omega_tau);
    row.residuals = condition_residuals(point);
    out.rows[i] = row;
  });
  return out;
}

std::vector<GateSolution> scan_integers(const ScanOptions& o) {
  if (o.k_max < 1 || o.pq_max < 1 || o.grid < 3 || !(o.eta_min < o.eta_max)) {
    throw OutOfRange("invalid integer-scan bounds");
  }
  struct Job {
    int k;
    int p;
  };
  std::vector<Job> jobs;
  for (int k = 1; k <= o.k_max; ++k) {
    if (k <= o.m) continue;
    for (int p = 1; p <= o.pq_max; ++p) jobs.push_back({k, p});
  }

  std::vector<std::pair<QuarterPhase, QuarterPhase>> phase_sets = {
      {QuarterPhase::quarter, QuarterPhase::quarter}};
  if (o.mixed_phases) {
    phase_sets.emplace_back(QuarterPhase::three_quarter, QuarterPhase::quarter);
    phase_sets.emplace_back(QuarterPhase::quarter, QuarterPhase::three_quarter);
  }

  const int ng = o.grid;
  std::vector<double> axis(static_cast<std::size_t>(ng));
  for (int i = 0; i < ng; ++i) axis[static_cast<std::size_t>(i)] = o.eta_min + (o.eta_max - o.eta_min) * i / (ng - 1);

  std::vector<std::vector<GateSolution>> found(jobs.size());
  parallel_for(jobs.size(), o.jobs, [&](std::size_t ji) {
    const Job job = jobs[ji];
    // Phases lambda_+- tau on the seed grid; NaN where alpha2 vanishes.
    const auto cells = static_cast<std::size_t>(ng * ng);
    std::vector<double> ph_plus(cells);
    std::vector<double> ph_minus(cells);
    for (int i = 0; i < ng; ++i) {
      for (int j = 0; j < ng; ++j) {
        const auto at = static_cast<std::size_t>(i * ng + j);
        const Branches b = branches(axis[static_cast<std::size_t>(i)],
                                    axis[static_cast<std::size_t>(j)], o.omega_ratio, job.k, o.m);
        if (std::abs(b.alpha2) < 1e-12) {
          ph_plus[at] = ph_minus[at] = std::nan("");
          continue;
        }
        const double tau = kTwoPi * job.p / std::abs(b.alpha2);
        ph_plus[at] = b.lambda_plus * tau;
        ph_minus[at] = b.lambda_minus * tau;
      }
    }
    std::vector<double> dist(cells);
    for (const auto& [pp, pm] : phase_sets) {
      for (int qp = 0; qp <= o.pq_max; ++qp) {
        for (int qm = 0; qm <= o.pq_max; ++qm) {
          const ResonanceIntegers n{job.p, qp, qm, pp, pm};
          const Targets t = targets_of(n);
          if (t.plus < t.minus) continue;  // lambda_+ >= lambda_-
          for (std::size_t c = 0; c < cells; ++c) {
            dist[c] = std::hypot(ph_plus[c] - t.plus, ph_minus[c] - t.minus);
          }
          for (int i = 0; i < ng; ++i) {
            for (int j = 0; j < ng; ++j) {
              const double d = dist[static_cast<std::size_t>(i * ng + j)];
              if (!(d < 0.5 * kPi)) continue;
              bool local_min = true;
              for (int di = -1; di <= 1 && local_min; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                  const int a = i + di;
                  const int b = j + dj;
                  if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= ng || b >= ng) continue;
                  if (dist[static_cast<std::size_t>(a * ng + b)] < d) {
                    local_min = false;
                    break;
                  }
                }
              }
              if (!local_min) continue;
              try {
                GateSolution s = solve_gate(job.k, o.m, o.omega_ratio, n,
                                            axis[static_cast<std::size_t>(i)],
                                            axis[static_cast<std::size_t>(j)], o.solver);
                if (s.eta1 > 0.0 && s.eta2 > 0.0 && s.max_residual() < 1e-8) {
                  found[ji].push_back(s);
                }
              } catch (const ConvergenceError&) {
              }
            }
          }
        }
      }
    }
  });

  std::vector<GateSolution> all;
  for (auto& f : found) {
    for (auto& s : f) {
      const bool dup = std::any_of(all.begin(), all.end(), [&](const GateSolution& o2) {
        return o2.k1 == s.k1 && o2.integers == s.integers && std::abs(o2.eta1 - s.eta1) < 1e-6 &&
               std::abs(o2.eta2 - s.eta2) < 1e-6;
      });
      if (!dup) all.push_back(s);
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const GateSolution& a, const GateSolution& b) {
    return std::tie(a.omega_tau, a.k1, a.eta1) < std::tie(b.omega_tau, b.k1, b.eta1);
  });
  return all;
}

}  // namespace pairgate
