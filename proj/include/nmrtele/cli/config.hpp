// Copyright 2026 The nmrtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NMRTELE_CLI_CONFIG_HPP
#define NMRTELE_CLI_CONFIG_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nmrtele/experiment.hpp"

namespace nmrtele::cli {

/// Bad user input: unreadable config, unknown keys, unphysical parameters.
/// Maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  MoleculeModel model = tceModel();
  std::vector<double> delays = defaultDelayGrid();
  Engine engine = Engine::GateLevel;
  bool keepT1 = true;
  bool keepT2 = true;
  bool noNoise = false;
  double rfError = 0.0;
  bool relaxDuringGates = false;
  std::vector<BlochVector> tomographyInputs;
  std::filesystem::path outDir = "out";

  /// The molecule after the noise toggles are applied.
  MoleculeModel effectiveModel() const;
  PulseOptions pulseOptions() const;
  SweepConfig sweep(ExperimentKind kind) const;
};

/// Reads a JSON document. Recognised keys (all optional):
///
///   molecule.spins        [{name, larmor_hz, t1, t2}] in register order
///                         (data, ancilla, target); t1/t2 may be "inf"
///   molecule.couplings    [{spins: [a, b], j_hz, active}]
///   molecule.carbon_t1    replaces the carbon T1 of the default molecule
///   delays                [seconds, ...]
///   engine                "gate" | "pulse"
///   noise.t1, noise.t2    booleans
///   noise.rf_error        fractional rotation-angle error (pulse engine)
///   noise.relax_during_gates
///   tomography.inputs     four [x, y, z] Bloch vectors
///   output.dir            directory for result files
///
/// Unknown keys are rejected. Throws ConfigError.
RunConfig parseConfigText(std::string_view text);
RunConfig loadConfigFile(const std::filesystem::path& path);

/// "0,0.1,0.25" -> {0, 0.1, 0.25}; checked non-negative, increasing.
std::vector<double> parseDelayList(std::string_view text);
Engine parseEngine(std::string_view text);

/// Creates the directory if needed and checks it accepts files.
void prepareOutputDir(const std::filesystem::path& dir);

}  // namespace nmrtele::cli

#endif  // NMRTELE_CLI_CONFIG_HPP
