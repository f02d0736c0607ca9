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

#include "pairgate/runner.hpp"

#include "pairgate/entanglement.hpp"
#include "pairgate/errors.hpp"
#include "pairgate/gate_design.hpp"
#include "pairgate/oracle.hpp"
#include "pairgate/parallel.hpp"
#include "pairgate/report.hpp"

#include <fmt/format.h>

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>

#ifndef PAIRGATE_VERSION
#define PAIRGATE_VERSION "0.0.0"
#endif

namespace pairgate::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

const char* kSpinLabels[] = {"gg", "ge", "eg", "ee"};

// Everything a run produces; written once at the end, also on failure.
struct Output {
  std::optional<CsvTable> csv;
  Json summary;
  std::vector<std::pair<std::string, PlotSpec>> plots;
};

std::string quarter_name(QuarterPhase q) {
  return q == QuarterPhase::quarter ? "quarter" : "three_quarter";
}

std::string form_name(CoefficientForm f) {
  return f == CoefficientForm::exact ? "exact" : "tabulated";
}

Json solution_json(const GateSolution& s) {
  Json j;
  j["k1"] = s.k1;
  j["m"] = s.m;
  j["omega_ratio"] = s.omega_ratio;
  j["eta1"] = s.eta1;
  j["eta2"] = s.eta2;
  j["omega_tau"] = s.omega_tau;
  j["integers"] = {{"p", s.integers.p},
                   {"q_plus", s.integers.q_plus},
                   {"q_minus", s.integers.q_minus},
                   {"plus_phase", quarter_name(s.integers.plus_phase)},
                   {"minus_phase", quarter_name(s.integers.minus_phase)}};
  j["residuals"] = {s.residuals[0], s.residuals[1], s.residuals[2]};
  j["bus_defect"] = s.bus_defect;
  j["iterations"] = s.iterations;
  return j;
}

// Solves the configured gate, or evaluates the fixed point when eta1/eta2/omega_tau are given.
GateSolution resolve_gate(const ExperimentConfig& c) {
  const GateBlock& g = c.gate;
  if (g.eta1 && g.eta2 && g.omega_tau) {
    GateSolution s;
    s.eta1 = *g.eta1;
    s.eta2 = *g.eta2;
    s.omega_ratio = g.omega_ratio;
    s.k1 = g.k1;
    s.m = g.m;
    s.omega_tau = *g.omega_tau;
    s.integers = g.integers;
    s.residuals = condition_residuals(s);
    s.bus_defect = bus_return_defect(s);
    return s;
  }
  GateSolution s =
      solve_gate(g.k1, g.m, g.omega_ratio, g.integers, g.seed_eta1, g.seed_eta2, c.solver);
  if (s.max_residual() > c.residual_tolerance) {
    throw ConvergenceError(fmt::format("solution residual {:.3e} exceeds residual_tolerance {:.3e}",
                                       s.max_residual(), c.residual_tolerance));
  }
  return s;
}

Json physical_json(const ExperimentConfig& c, std::optional<double> omega_tau) {
  Json j;
  if (c.physical) {
    const PhysicalConversion pc =
        convert_physical(c.physical->rabi_hz, c.physical->trap_hz, c.physical->durations_s);
    j["rabi_hz"] = c.physical->rabi_hz;
    j["trap_hz"] = c.physical->trap_hz;
    j["omega_over_nu"] = pc.omega_over_nu;
    j["omega_taus"] = pc.omega_taus;
    if (omega_tau) j["gate_duration_s"] = gate_duration_seconds(c.physical->rabi_hz, *omega_tau);
  } else {
    j["omega_over_nu"] = c.ratio_to_trap();
  }
  return j;
}

double trap_nu(const ExperimentConfig& c, const PulsePair& p) {
  return std::max(p.omega1, p.omega2) / c.ratio_to_trap();
}

double normalized_infidelity(const CVector& a, const CVector& b) {
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  return std::max(0.0, 1.0 - std::norm(a.dot(b)) / (na * nb));
}

void mode_solve(const ExperimentConfig& c, Output& out) {
  out.csv.emplace(std::vector<CsvTable::Column>{
      {"k1", "1"}, {"m", "1"}, {"omega_ratio", "1"}, {"p", "1"}, {"q_plus", "1"},
      {"q_minus", "1"}, {"eta1", "1"}, {"eta2", "1"}, {"omega_tau", "1/Omega2"},
      {"residual_carrier", "1"}, {"residual_plus", "1"}, {"residual_minus", "1"},
      {"bus_defect", "1"}, {"bus_retention_exact", "probability"},
      {"cnot_residual_exact", "1"}, {"gate_duration", "s"}});
  const GateSolution s = resolve_gate(c);
  out.summary["solution"] = solution_json(s);

  const RealizedGate exact = realized_gate(s, c.gate.phase2, CoefficientForm::exact, c.gate.phase1);
  const CnotCorrection cn = cnot_equivalence(exact.spin);
  Json gate;
  gate["exact"] = {{"bus_retention", exact.bus_retention},
                   {"unitarity_defect", exact.unitarity_defect},
                   {"cnot_residual", cn.residual},
                   {"sign", gate_sign(s, CoefficientForm::exact)}};
  try {
    const RealizedGate tab =
        realized_gate(s, c.gate.phase2, CoefficientForm::tabulated, c.gate.phase1);
    gate["tabulated"] = {{"bus_retention", tab.bus_retention},
                         {"unitarity_defect", tab.unitarity_defect},
                         {"cnot_residual", cnot_equivalence(tab.spin).residual}};
  } catch (const DegenerateSplitting& e) {
    gate["tabulated"] = {{"error", e.what()}};
  }
  out.summary["realized_gate"] = gate;
  out.summary["success_probability"] = success_probability(s, s.omega_tau);
  out.summary["physical"] = physical_json(c, s.omega_tau);

  const double duration =
      c.physical ? gate_duration_seconds(c.physical->rabi_hz, s.omega_tau) : std::nan("");
  out.csv->add_row({static_cast<long long>(s.k1), static_cast<long long>(s.m), s.omega_ratio,
                    static_cast<long long>(s.integers.p), static_cast<long long>(s.integers.q_plus),
                    static_cast<long long>(s.integers.q_minus), s.eta1, s.eta2, s.omega_tau,
                    s.residuals[0], s.residuals[1], s.residuals[2], s.bus_defect,
                    exact.bus_retention, cn.residual, duration});
}

void mode_sweep(const ExperimentConfig& c, Output& out) {
  out.csv.emplace(std::vector<CsvTable::Column>{{to_string(c.sweep.parameter), "1"},
                                                {"success_probability", "probability"},
                                                {"overlap_probability_exact", "probability"},
                                                {"residual_carrier", "1"},
                                                {"residual_plus", "1"},
                                                {"residual_minus", "1"}});
  const GateSolution s = resolve_gate(c);
  out.summary["solution"] = solution_json(s);

  std::vector<SweepRow> rows;
  if (!c.sweep.values.empty()) {
    rows.resize(c.sweep.values.size());
    parallel_for(rows.size(), c.jobs, [&](std::size_t i) {
      const double v = c.sweep.values[i];
      rows[i] = robustness_sweep(s, c.sweep.parameter, v, v, 1).rows.front();
    });
  } else {
    rows = robustness_sweep(s, c.sweep.parameter, c.sweep.lo, c.sweep.hi, c.sweep.steps, c.jobs).rows;
  }

  PlotSeries success{"success probability", {}, {}};
  PlotSeries overlap{"overlap probability (exact)", {}, {}};
  double best = -1.0;
  double best_at = 0.0;
  double worst = 2.0;
  for (const SweepRow& r : rows) {
    out.csv->add_row({r.value, r.success, r.overlap_exact, r.residuals[0], r.residuals[1],
                      r.residuals[2]});
    success.x.push_back(r.value);
    success.y.push_back(r.success);
    overlap.x.push_back(r.value);
    overlap.y.push_back(r.overlap_exact);
    if (r.success > best) {
      best = r.success;
      best_at = r.value;
    }
    worst = std::min(worst, r.success);
  }
  out.summary["sweep"] = {{"parameter", to_string(c.sweep.parameter)},
                          {"rows", rows.size()},
                          {"max_success", best},
                          {"argmax", best_at},
                          {"min_success", worst}};
  out.plots.emplace_back("sweep", PlotSpec{"Success probability vs " + to_string(c.sweep.parameter),
                                           to_string(c.sweep.parameter), "probability",
                                           {success, overlap}});
}

void mode_evolve(const ExperimentConfig& c, Output& out) {
  std::vector<CsvTable::Column> cols{{"t", "1/Omega2"}};
  for (const char* l : kSpinLabels) cols.push_back({fmt::format("P_m_{}", l), "probability"});
  cols.push_back({"P_bus_excited", "probability"});
  cols.push_back({"infidelity_effective", "1"});
  cols.push_back({"infidelity_full", "1"});
  out.csv.emplace(cols);

  const GateSolution s = resolve_gate(c);
  out.summary["solution"] = solution_json(s);
  const PulsePair pulses = s.pulses(c.gate.phase1, c.gate.phase2);
  const int km = std::abs(s.k1);
  const int m_max = c.evolve.m_max.value_or(default_m_max(s.m, km));
  if (m_max < s.m + km) throw TruncationError("[evolve] m_max must be at least m + |k1|");
  const HilbertGeometry g(m_max);
  const int in_index = static_cast<int>(std::find(std::begin(kSpinLabels), std::end(kSpinLabels),
                                                  c.evolve.spins) -
                                        std::begin(kSpinLabels));
  const StateVector start =
      make_basis_state(g, s.m, static_cast<Spin>(in_index / 2), static_cast<Spin>(in_index % 2));
  const double t_max = c.evolve.t_max.value_or(s.omega_tau);
  TrapModel trap;
  trap.nu = trap_nu(c, pulses);
  IntegratorConfig icfg;
  icfg.leak_tolerance = c.evolve.leak_tolerance;

  std::vector<PlotSeries> series;
  for (const char* l : kSpinLabels) series.push_back({fmt::format("P(m,{})", l), {}, {}});
  series.push_back({"P(bus excited)", {}, {}});
  double worst_eff = 0.0;
  double worst_full = 0.0;
  for (int i = 0; i < c.evolve.steps; ++i) {
    const double t = t_max * i / (c.evolve.steps - 1);
    const CVector a = propagate_amplitudes(g, start.amplitudes(), pulses, t, c.gate.form);
    std::vector<Cell> row{t};
    double on_m = 0.0;
    for (int sidx = 0; sidx < 4; ++sidx) {
      const double pr = std::norm(a(static_cast<Eigen::Index>(
          g.index(s.m, static_cast<Spin>(sidx / 2), static_cast<Spin>(sidx % 2)))));
      on_m += pr;
      row.emplace_back(pr);
      series[static_cast<std::size_t>(sidx)].x.push_back(t);
      series[static_cast<std::size_t>(sidx)].y.push_back(pr);
    }
    const double excited = std::max(0.0, a.squaredNorm() - on_m);
    row.emplace_back(excited);
    series[4].x.push_back(t);
    series[4].y.push_back(excited);
    double inf_eff = std::nan("");
    double inf_full = std::nan("");
    if (c.evolve.oracle) {
      const StateVector eff = integrate(HamiltonianSource::effective, pulses, trap, start, t, icfg);
      const StateVector full = integrate(HamiltonianSource::full, pulses, trap, start, t, icfg);
      inf_eff = normalized_infidelity(a, eff.amplitudes());
      inf_full = normalized_infidelity(a, full.amplitudes());
      worst_eff = std::max(worst_eff, inf_eff);
      worst_full = std::max(worst_full, inf_full);
    }
    row.emplace_back(inf_eff);
    row.emplace_back(inf_full);
    out.csv->add_row(std::move(row));
  }
  out.summary["evolve"] = {{"input", c.evolve.spins},
                           {"form", form_name(c.gate.form)},
                           {"m_max", m_max},
                           {"t_max", t_max},
                           {"omega_over_nu", c.ratio_to_trap()}};
  if (c.evolve.oracle) {
    out.summary["evolve"]["max_infidelity_effective"] = worst_eff;
    out.summary["evolve"]["max_infidelity_full"] = worst_full;
  }
  out.plots.emplace_back("populations",
                         PlotSpec{"Populations from |m," + c.evolve.spins + ">", "Omega2 t",
                                  "probability", series});
}

void mode_entangle(const ExperimentConfig& c, Output& out) {
  out.csv.emplace(std::vector<CsvTable::Column>{{"t1", "1/Omega2"},
                                                {"rotation_angle", "rad"},
                                                {"abs_U_squared", "probability"},
                                                {"abs_V_squared", "probability"},
                                                {"concurrence", "1"},
                                                {"expected_concurrence", "1"},
                                                {"fidelity_psi_plus", "probability"},
                                                {"fidelity_psi_minus", "probability"}});
  const GateSolution s = resolve_gate(c);
  out.summary["solution"] = solution_json(s);

  EntanglementRecipe recipe;
  recipe.gate = s;
  recipe.initial_m = s.m;
  recipe.form = c.gate.form;
  recipe.gate_phase = c.gate.phase2;
  recipe.gate_tolerance = c.entangle.bus_tolerance;
  const int sign = gate_sign(s, c.gate.form);
  recipe.rotation_phase = matching_rotation_phase(c.entangle.target, c.gate.phase2, sign);
  const double alpha = rotation_coupling(recipe);
  if (std::abs(alpha) < 1e-12) throw OutOfRange("ion-1 carrier coupling vanishes at eta1");
  const double t1_max = c.entangle.t1_max.value_or(kPi / (2.0 * std::abs(alpha)));

  const std::string target = c.entangle.target == EprState::psi_plus ? "psi_plus" : "psi_minus";
  out.summary["entangle"] = {{"target", target},
                             {"rotation_phase", recipe.rotation_phase},
                             {"gate_sign", sign},
                             {"alpha1_tilde", alpha}};

  PlotSeries conc{"concurrence", {}, {}};
  PlotSeries expected{"|sin(2 alpha t1)|", {}, {}};
  double worst_dev = 0.0;
  for (int i = 0; i < c.entangle.steps; ++i) {
    recipe.t1 = t1_max * i / (c.entangle.steps - 1);
    const StateVector st = prepare_entangled(recipe);
    const Eigen::Vector4cd spins = spin_state(st, s.m);
    const double cc = concurrence(spins);
    const double ex = std::abs(std::sin(2.0 * alpha * recipe.t1));
    worst_dev = std::max(worst_dev, std::abs(cc - ex));
    out.csv->add_row({recipe.t1, alpha * recipe.t1, std::norm(spins(0)), std::norm(spins(3)), cc, ex,
                      epr_fidelity(spins, EprState::psi_plus),
                      epr_fidelity(spins, EprState::psi_minus)});
    conc.x.push_back(recipe.t1);
    conc.y.push_back(cc);
    expected.x.push_back(recipe.t1);
    expected.y.push_back(ex);
  }
  recipe.t1 = kPi / (4.0 * std::abs(alpha));
  const Eigen::Vector4cd epr = spin_state(prepare_entangled(recipe), s.m);
  out.summary["entangle"]["epr_t1"] = recipe.t1;
  out.summary["entangle"]["epr_fidelity"] = epr_fidelity(epr, c.entangle.target);
  out.summary["entangle"]["epr_concurrence"] = concurrence(epr);
  out.summary["entangle"]["max_concurrence_deviation"] = worst_dev;
  out.plots.emplace_back("concurrence", PlotSpec{"Concurrence after rotation and gate", "Omega2 t1",
                                                 "concurrence", {conc, expected}});
}

void mode_validate(const ExperimentConfig& c, Output& out) {
  out.csv.emplace(std::vector<CsvTable::Column>{
      {"sample", "1"}, {"k1", "1"}, {"m", "1"}, {"eta1", "1"}, {"eta2", "1"},
      {"omega_ratio", "1"}, {"phase1", "rad"}, {"phase2", "rad"}, {"t", "1/Omega2"},
      {"infidelity_effective", "1"}, {"infidelity_full", "1"}});
  const auto samples =
      sample_valid_tuples(static_cast<std::size_t>(c.validate.samples), c.validate.seed,
                          c.validate.domain);
  std::vector<std::pair<double, double>> inf(samples.size());
  parallel_for(samples.size(), c.jobs, [&](std::size_t i) {
    const PropagationSample& smp = samples[i];
    const int km = smp.pulses.sideband_magnitude();
    const HilbertGeometry g(default_m_max(smp.fock_index, km));
    TrapModel trap;
    trap.nu = trap_nu(c, smp.pulses);
    double eff = 0.0;
    double full = 0.0;
    for (Spin s2 : {Spin::g, Spin::e}) {
      const StateVector in = make_basis_state(g, smp.fock_index, smp.pulses.active_spin(), s2);
      const StateVector a = evolve(in, smp.pulses, smp.time);
      eff = std::max(eff, a.infidelity(integrate(HamiltonianSource::effective, smp.pulses, trap, in,
                                                 smp.time)));
      full = std::max(full, a.infidelity(integrate(HamiltonianSource::full, smp.pulses, trap, in,
                                                   smp.time)));
    }
    inf[i] = {eff, full};
  });
  double worst_eff = 0.0;
  double worst_full = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = samples[i].pulses;
    out.csv->add_row({static_cast<long long>(i), static_cast<long long>(p.sideband1),
                      static_cast<long long>(samples[i].fock_index), p.eta1, p.eta2, p.omega1,
                      p.phase1, p.phase2, samples[i].time, inf[i].first, inf[i].second});
    worst_eff = std::max(worst_eff, inf[i].first);
    worst_full = std::max(worst_full, inf[i].second);
  }

  const CoefficientDiscrepancy d = compare_coefficient_forms(samples);
  Json disc;
  disc["samples"] = d.samples;
  disc["skipped_degenerate"] = d.skipped_degenerate;
  disc["max_abs_diff_E"] = d.max_diff_e;
  disc["max_abs_diff_F"] = d.max_diff_f;
  disc["tabulated_norm_defect"] = d.tabulated_norm_defect;
  disc["tabulated_overlap_defect"] = d.tabulated_overlap_defect;
  disc["exact_norm_defect"] = d.exact_norm_defect;
  disc["exact_overlap_defect"] = d.exact_overlap_defect;
  disc["agreeing_within_1e-8"] = d.agreeing(1e-8);

  const bool ok = worst_eff < c.validate.effective_tolerance && worst_full < c.validate.full_tolerance;
  out.summary["validate"] = {{"samples", samples.size()},
                             {"omega_over_nu", c.ratio_to_trap()},
                             {"max_infidelity_effective", worst_eff},
                             {"max_infidelity_full", worst_full},
                             {"effective_tolerance", c.validate.effective_tolerance},
                             {"full_tolerance", c.validate.full_tolerance},
                             {"passed", ok}};
  out.summary["coefficient_discrepancy"] = disc;
  if (!ok) {
    throw TruncationError(fmt::format(
        "oracle disagreement: effective {:.3e} (tolerance {:.1e}), full {:.3e} (tolerance {:.1e})",
        worst_eff, c.validate.effective_tolerance, worst_full, c.validate.full_tolerance));
  }
}

void mode_scan(const ExperimentConfig& c, Output& out) {
  out.csv.emplace(std::vector<CsvTable::Column>{
      {"k1", "1"}, {"p", "1"}, {"q_plus", "1"}, {"q_minus", "1"}, {"plus_phase", "1"},
      {"minus_phase", "1"}, {"eta1", "1"}, {"eta2", "1"}, {"omega_tau", "1/Omega2"},
      {"max_residual", "1"}, {"bus_defect", "1"}});
  ScanOptions o = c.scan;
  o.jobs = c.jobs;
  o.solver = c.solver;
  const std::vector<GateSolution> all = scan_integers(o);
  Json list = Json::array();
  for (const GateSolution& s : all) {
    out.csv->add_row({static_cast<long long>(s.k1), static_cast<long long>(s.integers.p),
                      static_cast<long long>(s.integers.q_plus),
                      static_cast<long long>(s.integers.q_minus), quarter_name(s.integers.plus_phase),
                      quarter_name(s.integers.minus_phase), s.eta1, s.eta2, s.omega_tau,
                      s.max_residual(), s.bus_defect});
    list.push_back(solution_json(s));
  }
  out.summary["scan"] = {{"solutions", all.size()}};
  if (!all.empty()) out.summary["scan"]["shortest"] = solution_json(all.front());
  out.summary["solutions"] = list;
}

void write_output(const ExperimentConfig& c, const Output& out) {
  const fs::path dir(c.out_dir);
  fs::create_directories(dir);
  if (out.csv) out.csv->write(dir / "results.csv");
  write_text(dir / "summary.json", out.summary.dump(2) + "\n");
  if (c.plots) {
    for (const auto& [name, spec] : out.plots) write_text(dir / "plots" / (name + ".svg"), render_svg(spec));
  }
}

}  // namespace

std::string toolkit_version() { return PAIRGATE_VERSION; }

ExperimentConfig apply_overrides(ExperimentConfig c, Mode mode, const Overrides& o) {
  if (const auto run = c.sections.find("run");
      run != c.sections.end() && run->second.count("mode") && c.mode != mode) {
    throw ConfigError("config mode '" + to_string(c.mode) + "' conflicts with subcommand '" +
                      to_string(mode) + "'");
  }
  c.mode = mode;
  c.sections["run"]["mode"] = to_string(mode);
  if (o.out_dir) c.out_dir = *o.out_dir;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.seed_eta1) {
    c.gate.seed_eta1 = *o.seed_eta1;
    c.sections["gate"]["seed_eta1"] = format_real(*o.seed_eta1);
  }
  if (o.seed_eta2) {
    c.gate.seed_eta2 = *o.seed_eta2;
    c.sections["gate"]["seed_eta2"] = format_real(*o.seed_eta2);
  }
  validate(c);
  return c;
}

int run(const ExperimentConfig& c, std::ostream& log) {
  try {
    validate(c);
  } catch (const ConfigError& e) {
    log << "invalid config: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  Output out;
  out.summary["provenance"] = {{"toolkit", "pairgate"},
                               {"version", toolkit_version()},
                               {"config_sha256", sha256_hex(canonical_text(c.sections))},
                               {"mode", to_string(c.mode)}};
  Json cfg = Json::object();
  for (const auto& [sec, kv] : c.sections) {
    for (const auto& [key, value] : kv) cfg[sec][key] = value;
  }
  out.summary["config"] = cfg;
  out.summary["status"] = "ok";

  int code = kExitOk;
  try {
    switch (c.mode) {
      case Mode::solve_gate: mode_solve(c, out); break;
      case Mode::sweep: mode_sweep(c, out); break;
      case Mode::evolve: mode_evolve(c, out); break;
      case Mode::entangle: mode_entangle(c, out); break;
      case Mode::validate_rwa: mode_validate(c, out); break;
      case Mode::scan_integers: mode_scan(c, out); break;
    }
  } catch (const ConfigError& e) {
    log << "invalid config: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const ConvergenceError& e) {
    out.summary["status"] = "not_converged";
    out.summary["error"] = e.what();
    code = kExitNoConvergence;
  } catch (const TruncationError& e) {
    out.summary["status"] = "oracle_failure";
    out.summary["error"] = e.what();
    code = kExitOracleFailure;
  } catch (const BusEntangled& e) {
    out.summary["status"] = "oracle_failure";
    out.summary["error"] = e.what();
    code = kExitOracleFailure;
  } catch (const Error& e) {
    out.summary["status"] = "error";
    out.summary["error"] = e.what();
    code = kExitFailure;
  }
  write_output(c, out);
  if (code != kExitOk) log << to_string(c.mode) << ": " << out.summary["error"].get<std::string>() << "\n";
  log << fmt::format("{}: wrote {}\n", to_string(c.mode), (fs::path(c.out_dir) / "summary.json").string());
  return code;
}

int run_from_file(Mode mode, const std::string& path, const Overrides& o, std::ostream& log) {
  ExperimentConfig c;
  try {
    c = path.empty() ? from_sections({}) : load_config(path);
    c = apply_overrides(std::move(c), mode, o);
  } catch (const ConfigError& e) {
    log << "invalid config: " << e.what() << "\n";
    return kExitInvalidConfig;
  }
  return run(c, log);
}

}  // namespace pairgate::cli
