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

#ifndef NMRTELE_EXPERIMENT_HPP
#define NMRTELE_EXPERIMENT_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "nmrtele/circuits.hpp"
#include "nmrtele/molecule.hpp"
#include "nmrtele/pulse.hpp"
#include "nmrtele/tomography.hpp"

namespace nmrtele {

enum class ExperimentKind { Teleport, Control };
enum class Engine { GateLevel, PulseLevel };

std::string_view toString(ExperimentKind kind);
std::string_view toString(Engine engine);

struct SweepConfig {
  std::vector<double> delays;
  ExperimentKind experiment = ExperimentKind::Teleport;
  MoleculeModel model = tceModel();
  Engine engine = Engine::GateLevel;
  PulseOptions pulse;
  /// Empty means |0>, |1>, |+>, |+i>.
  std::vector<DensityMatrix> tomographyInputs;

  /// Throws std::invalid_argument unless delays are nonempty, finite,
  /// non-negative and strictly increasing.
  void validate() const;
};

struct SweepRecord {
  double delay;
  double fe;
  ProcessMap process;
};

/// 12 uniformly spaced delays from 0 to 1.2 s inclusive.
std::vector<double> defaultDelayGrid();

/// Circuit for one delay of the configured experiment.
Circuit buildCircuit(const SweepConfig& cfg, double delay);

/// Process tomography of the data -> readout map at one delay.
SweepRecord runPoint(const SweepConfig& cfg, double delay);

/// Delays are evaluated in parallel (OpenMP); records come back in delay
/// order and are bit-identical to runSweepSerial.
std::vector<SweepRecord> runSweep(const SweepConfig& cfg);
/// Single-threaded reference.
std::vector<SweepRecord> runSweepSerial(const SweepConfig& cfg);

/// fe(t) = amplitude * exp(-t / timeConstant) + offset.
struct DecayFit {
  double amplitude = 0.0;
  double timeConstant = 1.0;
  double offset = 0.0;
  double residualNorm = 0.0;  // RMS misfit
  /// False when the data carry no decay (flat curve) or the time constant
  /// ran to the edge of the search range.
  bool identifiable = true;
  int iterations = 0;
};

class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, DecayFit best) : std::runtime_error(what), best_(best) {}
  const DecayFit& best() const { return best_; }

 private:
  DecayFit best_;
};

inline constexpr int kFitMaxIterations = 500;
inline constexpr int kFitSeedCount = 40;
inline constexpr double kFitSeedMin = 0.05;
inline constexpr double kFitSeedMax = 10.0;

/// Least squares over (A, tau, C): the best of kFitSeedCount log-spaced tau
/// seeds (A and C solved linearly for each), then Levenberg-Marquardt in
/// (A, log tau, C). Needs at least 4 points.
DecayFit fitDecay(std::span<const double> times, std::span<const double> values);
DecayFit fitDecay(std::span<const SweepRecord> records);

inline constexpr double kSlowDecayRatio = 3.0;

struct CurveComparison {
  std::vector<double> delays;
  std::vector<double> feTeleport;
  std::vector<double> feControl;
  std::optional<DecayFit> teleportFit;
  std::optional<DecayFit> controlFit;
  /// tau_teleport / tau_control, NaN when either fit is unavailable.
  double tauRatio;
  /// Teleport fe at the smallest nonzero delay exceeds the classical 0.5.
  bool teleportAboveClassical;
  /// Control loses more fidelity across the grid than teleport does.
  bool controlDecaysFaster;
  /// tauRatio > kSlowDecayRatio.
  bool teleportDecaysSlowly;
};

/// Throws std::invalid_argument if the delay grids differ.
CurveComparison compareCurves(std::span<const SweepRecord> teleport, std::span<const SweepRecord> control);

}  // namespace nmrtele

#endif  // NMRTELE_EXPERIMENT_HPP
