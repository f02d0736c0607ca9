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

#include "pairgate/entanglement.hpp"
#include "pairgate/gate_design.hpp"
#include "pairgate/propagator.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pairgate::cli {

enum class Mode { solve_gate, evolve, sweep, entangle, validate_rwa, scan_integers };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& name);

/// Raw key/value text grouped by section, as read from INI or a JSON summary.
using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

struct GateBlock {
  int k1 = 1;
  int m = 0;
  double omega_ratio = 1.0;
  ResonanceIntegers integers{1, 2, 1};
  double seed_eta1 = 2.2;
  double seed_eta2 = 1.7;
  CoefficientForm form = CoefficientForm::exact;
  double phase1 = 0.0;
  double phase2 = 0.0;
  /// When all three are present the point is used as-is instead of solving.
  std::optional<double> eta1;
  std::optional<double> eta2;
  std::optional<double> omega_tau;
};

struct SweepBlock {
  SweepParameter parameter = SweepParameter::omega_tau;
  double lo = 55.5;
  double hi = 57.0;
  int steps = 151;
  std::vector<double> values;  ///< explicit grid; overrides lo/hi/steps
};

struct EvolveBlock {
  std::string spins = "eg";
  std::optional<double> t_max;  ///< defaults to the gate duration
  int steps = 101;
  std::optional<int> m_max;
  double leak_tolerance = 1e-6;
  bool oracle = true;  ///< compare against the full Hamiltonian at omega_over_nu
};

struct EntangleBlock {
  EprState target = EprState::psi_minus;
  std::optional<double> t1_max;  ///< defaults to pi / (2 alpha1-tilde)
  int steps = 50;
  double bus_tolerance = 1e-6;
};

struct ValidateBlock {
  int samples = 100;
  std::uint64_t seed = 1;
  SampleDomain domain;
  double effective_tolerance = 1e-6;
  double full_tolerance = 1e-3;
};

/// Omega/(2 pi) and nu/(2 pi) in Hz.
struct PhysicalBlock {
  double rabi_hz = 0.0;
  double trap_hz = 0.0;
  std::vector<double> durations_s;
};

struct ExperimentConfig {
  Mode mode = Mode::solve_gate;
  std::string out_dir = "out";
  int jobs = 1;
  bool plots = true;

  GateBlock gate;
  SolverOptions solver;
  double residual_tolerance = 1e-8;
  SweepBlock sweep;
  EvolveBlock evolve;
  EntangleBlock entangle;
  ValidateBlock validate;
  ScanOptions scan;

  std::optional<double> omega_over_nu;  ///< [dimensionless] block
  std::optional<PhysicalBlock> physical;

  /// Canonical text of the parsed sections; hashed into the provenance header.
  SectionMap sections;

  /// Omega/nu from whichever block is present, else 0.01.
  double ratio_to_trap() const;
};

/// Reads an INI file, or a summary.json produced by a previous run. Throws
/// ConfigError on unknown keys, malformed values or failed validation.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_ini(const std::string& text);
ExperimentConfig parse_summary_json(const std::string& text);
ExperimentConfig from_sections(const SectionMap& sections);

/// Re-checks the invariants; run() calls this after command-line overrides.
void validate(const ExperimentConfig& config);

/// Deterministic canonical rendering ("[section]\nkey = value\n...").
std::string canonical_text(const SectionMap& sections);
std::string sha256_hex(const std::string& data);

struct PhysicalConversion {
  double omega_over_nu = 0.0;
  std::vector<double> omega_taus;  ///< Omega * duration for each input duration
};

/// Dimensionless block from Hz values (Omega/2pi, nu/2pi) and durations in seconds.
PhysicalConversion convert_physical(double rabi_hz, double trap_hz,
                                    const std::vector<double>& durations_s = {});

/// Absolute duration in seconds of a gate of length omega_tau at Omega/2pi = rabi_hz.
double gate_duration_seconds(double rabi_hz, double omega_tau);

}  // namespace pairgate::cli
