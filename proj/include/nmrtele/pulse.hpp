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

#ifndef NMRTELE_PULSE_HPP
#define NMRTELE_PULSE_HPP

#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "nmrtele/circuits.hpp"
#include "nmrtele/molecule.hpp"

namespace nmrtele {

enum class RfAxis { X, Y };

/// Ideal instantaneous rotation of one spin in its rotating frame.
struct RfRotation {
  int spin;
  RfAxis axis;
  double angle;  // radians
};

/// Rotating-frame evolution under the weak-coupling Hamiltonian
/// sum pi J Z_a Z_b / 2 of the listed couplings. Couplings not listed, or
/// inactive in the model, are refocused for the interval.
struct FreeEvolution {
  double duration;  // seconds
  std::vector<std::pair<int, int>> couplings;
  bool relax = true;
};

/// Non-unitary step carried through from the circuit (environment readout).
struct ChannelStep {
  KrausChannel channel;
};

using PulseStep = std::variant<RfRotation, FreeEvolution, ChannelStep>;

class PulseSchedule {
 public:
  PulseSchedule& append(PulseStep step);
  PulseSchedule& append(const PulseSchedule& other);

  const std::vector<PulseStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }
  /// Sum of free-evolution durations; pulses take no time.
  double totalDuration() const;

 private:
  std::vector<PulseStep> steps_;
};

struct PulseOptions {
  /// Fractional rf miscalibration: every rotation angle is scaled by
  /// (1 + rfAngleError). Uncalibrated; for qualitative studies.
  double rfAngleError = 0.0;
  /// Let spins relax during the coupling intervals inside compiled gates.
  /// Off by default so gates are as ideal as in the gate-level engine.
  bool relaxDuringGates = false;
};

class UnsupportedGate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Translates one circuit event into an rf/free-evolution schedule.
/// Two-spin gates need an active coupling between the spins; the
/// controlled correction routes a missing leg through a spin coupled to both.
/// Delays become refocused free evolution with relaxation.
PulseSchedule compileGate(const GateEvent& event, const MoleculeModel& model, const PulseOptions& options = {});

PulseSchedule compileCircuit(const Circuit& circuit, const MoleculeModel& model, const PulseOptions& options = {});

DensityMatrix simulateSchedule(const PulseSchedule& schedule, const MoleculeModel& model, const DensityMatrix& rho,
                               const PulseOptions& options = {});

/// Unitary of a schedule with no relaxing intervals and no channel steps.
ComplexMatrix scheduleUnitary(const PulseSchedule& schedule, const MoleculeModel& model,
                              const PulseOptions& options = {});

/// Pulse-level counterpart of runCircuit.
DensityMatrix runCircuitPulse(const Circuit& circuit, const MoleculeModel& model, const DensityMatrix& inputData,
                              const PulseOptions& options = {});

/// Euler angles with u = e^{i phase} Rz(beta) Ry(gamma) Rz(delta).
struct ZyzAngles {
  double phase;
  double beta;
  double gamma;
  double delta;
};
ZyzAngles zyzDecompose(const ComplexMatrix& u);

}  // namespace nmrtele

#endif  // NMRTELE_PULSE_HPP
