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

#include "pairgate/config.hpp"

#include "pairgate/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include "json.hpp"
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pairgate::cli {

namespace {

const std::set<std::string> kSections = {"run",      "gate",          "solver",  "sweep",
                                         "evolve",   "entangle",      "validate", "scan",
                                         "physical", "dimensionless"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Pulls typed values out of a SectionMap and remembers which keys were read.
class Reader {
 public:
  explicit Reader(const SectionMap& s) : sections_(s) {}

  const std::string* raw(const std::string& sec, const std::string& key) {
    const auto it = sections_.find(sec);
    if (it == sections_.end()) return nullptr;
    const auto kv = it->second.find(key);
    if (kv == it->second.end()) return nullptr;
    used_.insert(sec + "." + key);
    return &kv->second;
  }

  bool has_section(const std::string& sec) const { return sections_.count(sec) != 0; }

  std::optional<double> real(const std::string& sec, const std::string& key) {
    const std::string* v = raw(sec, key);
    if (!v) return std::nullopt;
    return parse_real(*v, sec, key);
  }
  void real(const std::string& sec, const std::string& key, double& out) {
    if (auto v = real(sec, key)) out = *v;
  }

  std::optional<long long> integer(const std::string& sec, const std::string& key) {
    const std::string* v = raw(sec, key);
    if (!v) return std::nullopt;
    try {
      std::size_t pos = 0;
      const long long x = std::stoll(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing");
      return x;
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("[{}] {}: expected an integer, got '{}'", sec, key, *v));
    }
  }
  void integer(const std::string& sec, const std::string& key, int& out) {
    if (auto v = integer(sec, key)) out = static_cast<int>(*v);
  }

  void boolean(const std::string& sec, const std::string& key, bool& out) {
    const std::string* v = raw(sec, key);
    if (!v) return;
    if (*v == "true" || *v == "yes" || *v == "1") {
      out = true;
    } else if (*v == "false" || *v == "no" || *v == "0") {
      out = false;
    } else {
      throw ConfigError(fmt::format("[{}] {}: expected true or false, got '{}'", sec, key, *v));
    }
  }

  std::optional<std::vector<double>> list(const std::string& sec, const std::string& key) {
    const std::string* v = raw(sec, key);
    if (!v) return std::nullopt;
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(parse_real(item, sec, key));
    }
    return out;
  }

  void reject_unused() const {
    for (const auto& [sec, kv] : sections_) {
      if (!kSections.count(sec)) throw ConfigError("unknown section [" + sec + "]");
      for (const auto& [key, value] : kv) {
        if (!used_.count(sec + "." + key)) {
          throw ConfigError(fmt::format("unknown key '{}' in [{}]", key, sec));
        }
      }
    }
  }

 private:
  static double parse_real(const std::string& v, const std::string& sec, const std::string& key) {
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument("bad");
      return x;
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("[{}] {}: expected a number, got '{}'", sec, key, v));
    }
  }

  const SectionMap& sections_;
  std::set<std::string> used_;
};

QuarterPhase quarter_from(const std::string& v) {
  if (v == "quarter" || v == "1") return QuarterPhase::quarter;
  if (v == "three_quarter" || v == "3") return QuarterPhase::three_quarter;
  throw ConfigError("quarter phase must be 'quarter' or 'three_quarter', got '" + v + "'");
}

CoefficientForm form_from(const std::string& v) {
  if (v == "exact") return CoefficientForm::exact;
  if (v == "tabulated") return CoefficientForm::tabulated;
  throw ConfigError("form must be 'exact' or 'tabulated', got '" + v + "'");
}

EprState epr_from(const std::string& v) {
  if (v == "psi_plus") return EprState::psi_plus;
  if (v == "psi_minus") return EprState::psi_minus;
  throw ConfigError("target must be 'psi_plus' or 'psi_minus', got '" + v + "'");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::solve_gate: return "solve-gate";
    case Mode::evolve: return "evolve";
    case Mode::sweep: return "sweep";
    case Mode::entangle: return "entangle";
    case Mode::validate_rwa: return "validate-rwa";
    case Mode::scan_integers: return "scan-integers";
  }
  return "?";
}

Mode mode_from_string(const std::string& name) {
  for (Mode m : {Mode::solve_gate, Mode::evolve, Mode::sweep, Mode::entangle, Mode::validate_rwa,
                 Mode::scan_integers}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown mode '" + name + "'");
}

double ExperimentConfig::ratio_to_trap() const {
  if (physical) return physical->rabi_hz / physical->trap_hz;
  return omega_over_nu.value_or(0.01);
}

ExperimentConfig from_sections(const SectionMap& sections) {
  Reader r(sections);
  ExperimentConfig c;

  if (const auto* v = r.raw("run", "mode")) c.mode = mode_from_string(*v);
  if (const auto* v = r.raw("run", "out")) c.out_dir = *v;
  r.integer("run", "jobs", c.jobs);
  r.boolean("run", "plots", c.plots);

  GateBlock& g = c.gate;
  r.integer("gate", "k1", g.k1);
  r.integer("gate", "m", g.m);
  r.real("gate", "omega_ratio", g.omega_ratio);
  r.integer("gate", "p", g.integers.p);
  r.integer("gate", "q_plus", g.integers.q_plus);
  r.integer("gate", "q_minus", g.integers.q_minus);
  if (const auto* v = r.raw("gate", "plus_phase")) g.integers.plus_phase = quarter_from(*v);
  if (const auto* v = r.raw("gate", "minus_phase")) g.integers.minus_phase = quarter_from(*v);
  r.real("gate", "seed_eta1", g.seed_eta1);
  r.real("gate", "seed_eta2", g.seed_eta2);
  if (const auto* v = r.raw("gate", "form")) g.form = form_from(*v);
  r.real("gate", "phase1", g.phase1);
  r.real("gate", "phase2", g.phase2);
  g.eta1 = r.real("gate", "eta1");
  g.eta2 = r.real("gate", "eta2");
  g.omega_tau = r.real("gate", "omega_tau");

  r.real("solver", "tolerance", c.solver.tolerance);
  r.integer("solver", "max_iterations", c.solver.max_iterations);
  r.real("solver", "jacobian_step", c.solver.jacobian_step);
  r.real("solver", "residual_tolerance", c.residual_tolerance);

  if (const auto* v = r.raw("sweep", "parameter")) c.sweep.parameter = sweep_parameter_from_string(*v);
  r.real("sweep", "lo", c.sweep.lo);
  r.real("sweep", "hi", c.sweep.hi);
  r.integer("sweep", "steps", c.sweep.steps);
  if (auto v = r.list("sweep", "values")) {
    c.sweep.values = *v;
    require(!v->empty(), "[sweep] values: empty grid");
  }

  if (const auto* v = r.raw("evolve", "spins")) c.evolve.spins = *v;
  c.evolve.t_max = r.real("evolve", "t_max");
  r.integer("evolve", "steps", c.evolve.steps);
  if (auto v = r.integer("evolve", "m_max")) c.evolve.m_max = static_cast<int>(*v);
  r.real("evolve", "leak_tolerance", c.evolve.leak_tolerance);
  r.boolean("evolve", "oracle", c.evolve.oracle);

  if (const auto* v = r.raw("entangle", "target")) c.entangle.target = epr_from(*v);
  c.entangle.t1_max = r.real("entangle", "t1_max");
  r.integer("entangle", "steps", c.entangle.steps);
  r.real("entangle", "bus_tolerance", c.entangle.bus_tolerance);

  r.integer("validate", "samples", c.validate.samples);
  if (auto v = r.integer("validate", "seed")) c.validate.seed = static_cast<std::uint64_t>(*v);
  r.integer("validate", "max_sideband", c.validate.domain.max_sideband);
  r.real("validate", "eta_min", c.validate.domain.eta_min);
  r.real("validate", "eta_max", c.validate.domain.eta_max);
  r.real("validate", "ratio_min", c.validate.domain.ratio_min);
  r.real("validate", "ratio_max", c.validate.domain.ratio_max);
  r.real("validate", "time_max", c.validate.domain.time_max);
  r.real("validate", "effective_tolerance", c.validate.effective_tolerance);
  r.real("validate", "full_tolerance", c.validate.full_tolerance);

  c.scan.m = c.gate.m;
  c.scan.omega_ratio = c.gate.omega_ratio;
  r.integer("scan", "k_max", c.scan.k_max);
  r.integer("scan", "pq_max", c.scan.pq_max);
  r.real("scan", "eta_min", c.scan.eta_min);
  r.real("scan", "eta_max", c.scan.eta_max);
  r.integer("scan", "grid", c.scan.grid);
  r.boolean("scan", "mixed_phases", c.scan.mixed_phases);

  c.omega_over_nu = r.real("dimensionless", "omega_over_nu");
  if (r.has_section("physical")) {
    PhysicalBlock p;
    const auto rabi = r.real("physical", "rabi_hz");
    const auto trap = r.real("physical", "trap_hz");
    require(rabi && trap, "[physical] needs rabi_hz and trap_hz");
    p.rabi_hz = *rabi;
    p.trap_hz = *trap;
    if (auto d = r.list("physical", "durations_s")) p.durations_s = *d;
    c.physical = p;
  }

  r.reject_unused();
  c.sections = sections;
  // Output location and parallelism never change results; keep them out of the hash.
  if (auto it = c.sections.find("run"); it != c.sections.end()) {
    it->second.erase("out");
    it->second.erase("jobs");
    if (it->second.empty()) c.sections.erase(it);
  }
  validate(c);
  return c;
}

void validate(const ExperimentConfig& c) {
  require(!(c.physical && c.omega_over_nu), "[physical] and [dimensionless] are mutually exclusive");
  require(c.jobs >= 1, "[run] jobs must be >= 1");
  require(!c.out_dir.empty(), "[run] out must not be empty");

  const GateBlock& g = c.gate;
  require(g.k1 != 0, "[gate] k1 must be nonzero");
  require(g.m >= 0 && std::abs(g.k1) > g.m, "[gate] needs |k1| > m >= 0");
  require(g.omega_ratio > 0.0, "[gate] omega_ratio must be positive");
  require(g.integers.p >= 1 && g.integers.q_plus >= 0 && g.integers.q_minus >= 0,
          "[gate] p >= 1 and q_plus, q_minus >= 0 required");
  const int fixed = (g.eta1 ? 1 : 0) + (g.eta2 ? 1 : 0) + (g.omega_tau ? 1 : 0);
  require(fixed == 0 || fixed == 3, "[gate] eta1, eta2 and omega_tau must be given together");
  if (g.omega_tau) require(*g.omega_tau >= 0.0, "[gate] omega_tau must be non-negative");

  require(c.solver.tolerance > 0.0 && c.residual_tolerance > 0.0 && c.solver.jacobian_step > 0.0,
          "[solver] tolerances must be positive");
  require(c.solver.max_iterations >= 1, "[solver] max_iterations must be >= 1");

  if (c.sweep.values.empty()) {
    require(c.sweep.lo <= c.sweep.hi, "[sweep] lo must not exceed hi");
    require(c.sweep.lo == c.sweep.hi || c.sweep.steps >= 2, "[sweep] steps must be >= 2: empty grid");
  }

  static const std::set<std::string> spins = {"gg", "ge", "eg", "ee"};
  require(spins.count(c.evolve.spins) != 0, "[evolve] spins must be one of gg, ge, eg, ee");
  require(c.evolve.steps >= 2, "[evolve] steps must be >= 2");
  require(c.evolve.leak_tolerance > 0.0, "[evolve] leak_tolerance must be positive");
  if (c.evolve.t_max) require(*c.evolve.t_max >= 0.0, "[evolve] t_max must be non-negative");

  require(c.entangle.steps >= 2, "[entangle] steps must be >= 2");
  require(c.entangle.bus_tolerance > 0.0, "[entangle] bus_tolerance must be positive");

  const ValidateBlock& v = c.validate;
  require(v.samples >= 1, "[validate] samples must be >= 1");
  require(v.domain.max_sideband >= 1, "[validate] max_sideband must be >= 1");
  require(v.domain.eta_min <= v.domain.eta_max && v.domain.ratio_min <= v.domain.ratio_max &&
              v.domain.ratio_min > 0.0 && v.domain.time_max >= 0.0,
          "[validate] invalid sampling box");
  require(v.effective_tolerance > 0.0 && v.full_tolerance > 0.0,
          "[validate] tolerances must be positive");

  require(c.scan.k_max >= 1 && c.scan.pq_max >= 1 && c.scan.grid >= 3 &&
              c.scan.eta_min < c.scan.eta_max,
          "[scan] invalid bounds");

  if (c.omega_over_nu) require(*c.omega_over_nu > 0.0, "[dimensionless] omega_over_nu must be positive");
  if (c.physical) {
    require(c.physical->rabi_hz > 0.0 && c.physical->trap_hz > 0.0,
            "[physical] frequencies must be positive");
    for (double d : c.physical->durations_s) require(d > 0.0, "[physical] durations must be positive");
  }
}

ExperimentConfig parse_ini(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  SectionMap sections;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      sections["run"][trim(name)] = trim(node.data());  // top-level key
      continue;
    }
    auto& sec = sections[trim(name)];
    for (const auto& [key, value] : node) sec[trim(key)] = trim(value.data());
  }
  return from_sections(sections);
}

ExperimentConfig parse_summary_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed JSON summary: ") + e.what());
  }
  if (!doc.contains("config") || !doc["config"].is_object()) {
    throw ConfigError("JSON summary has no 'config' object");
  }
  SectionMap sections;
  for (const auto& [name, body] : doc["config"].items()) {
    if (!body.is_object()) throw ConfigError("config section '" + name + "' must be an object");
    for (const auto& [key, value] : body.items()) {
      sections[name][key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  return from_sections(sections);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_summary_json(text);
  return parse_ini(text);
}

std::string canonical_text(const SectionMap& sections) {
  std::string out;
  for (const auto& [name, kv] : sections) {
    out += "[" + name + "]\n";
    for (const auto& [key, value] : kv) out += key + " = " + value + "\n";
  }
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

PhysicalConversion convert_physical(double rabi_hz, double trap_hz,
                                    const std::vector<double>& durations_s) {
  if (!(rabi_hz > 0.0) || !(trap_hz > 0.0)) {
    throw OutOfRange("Rabi and trap frequencies must be positive");
  }
  PhysicalConversion out;
  out.omega_over_nu = rabi_hz / trap_hz;
  const double omega = 2.0 * kPi * rabi_hz;
  for (double d : durations_s) {
    if (!(d > 0.0)) throw OutOfRange("durations must be positive");
    out.omega_taus.push_back(omega * d);
  }
  return out;
}

double gate_duration_seconds(double rabi_hz, double omega_tau) {
  if (!(rabi_hz > 0.0)) throw OutOfRange("Rabi frequency must be positive");
  if (omega_tau < 0.0) throw OutOfRange("omega_tau must be non-negative");
  return omega_tau / (2.0 * kPi * rabi_hz);
}

}  // namespace pairgate::cli
