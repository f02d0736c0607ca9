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

#include "pairgate/config.hpp"

#include <optional>
#include <ostream>
#include <string>

namespace pairgate::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvalidConfig = 2,
  kExitNoConvergence = 3,
  kExitOracleFailure = 4,
};

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<std::string> out_dir;
  std::optional<int> jobs;
  std::optional<double> seed_eta1;
  std::optional<double> seed_eta2;
};

std::string toolkit_version();

/// Applies overrides and the subcommand's mode; throws ConfigError when the
/// config names a different mode.
ExperimentConfig apply_overrides(ExperimentConfig config, Mode mode, const Overrides& overrides);

/// Executes one experiment and writes results.csv, summary.json and plots/*.svg
/// under config.out_dir. Returns an ExitCode. Invalid configs write nothing.
int run(const ExperimentConfig& config, std::ostream& log);

/// load_config + apply_overrides + run, mapping config errors to exit 2.
/// An empty path runs the built-in defaults.
int run_from_file(Mode mode, const std::string& config_path, const Overrides& overrides,
                  std::ostream& log);

}  // namespace pairgate::cli
