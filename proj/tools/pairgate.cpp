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

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  using namespace pairgate::cli;

  CLI::App app{"Two-ion sideband gate designer and simulator"};
  app.set_version_flag("--version", toolkit_version());
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  const std::vector<std::pair<Mode, std::string>> modes = {
      {Mode::solve_gate, "Solve the gate conditions for (eta1, eta2, Omega tau)"},
      {Mode::evolve, "Evolve a basis state through the pulse pair, with oracle comparison"},
      {Mode::sweep, "Success probability over one parameter"},
      {Mode::entangle, "Rotation then gate: entangled-state preparation"},
      {Mode::validate_rwa, "Analytic propagator vs numeric oracles on random tuples"},
      {Mode::scan_integers, "Enumerate gate solutions over small resonance integers"},
  };
  for (const auto& [mode, help] : modes) {
    CLI::App* sub = app.add_subcommand(to_string(mode), help);
    sub->add_option("--config", config_path, "INI config, or a summary.json from an earlier run")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", overrides.out_dir, "Output directory");
    sub->add_option("--jobs", overrides.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed-eta1", overrides.seed_eta1, "Newton seed for eta1");
    sub->add_option("--seed-eta2", overrides.seed_eta2, "Newton seed for eta2");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  for (const auto& [mode, help] : modes) {
    if (app.got_subcommand(to_string(mode))) {
      return run_from_file(mode, config_path, overrides, std::cerr);
    }
  }
  return kExitInvalidConfig;
}
