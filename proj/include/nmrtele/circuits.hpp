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

#ifndef NMRTELE_CIRCUITS_HPP
#define NMRTELE_CIRCUITS_HPP

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "nmrtele/channels.hpp"
#include "nmrtele/molecule.hpp"
#include "nmrtele/qstate.hpp"

namespace nmrtele {

enum class GateKind {
  Identity,
  Hadamard,
  PauliX,
  PauliY,
  PauliZ,
  RotationX,
  RotationY,
  RotationZ,
  Cnot,  // targets = {control, target}
  Cz,
  /// Classically controlled Pauli correction: targets = {data, ancilla,
  /// target}; the target receives table[2*data + ancilla].
  ControlledCorrection,
  Custom,
};

/// Bits (x, z) of a Pauli correction written as Z^z X^x (X applied first).
/// (0,0) = I, (1,0) = sigma_x, (0,1) = sigma_z, (1,1) = i sigma_y.
struct PauliBits {
  bool x = false;
  bool z = false;
  friend bool operator==(const PauliBits&, const PauliBits&) = default;
};

ComplexMatrix pauliBitsMatrix(PauliBits bits);

/// Outcome (data bit, ancilla bit) of the Bell-basis readout to the correction
/// that restores the teleported state on the target.
class CorrectionTable {
 public:
  explicit CorrectionTable(std::array<PauliBits, 4> entries) : entries_(entries) {}

  /// Derived by simulating the entangle + Bell-rotation convention used by
  /// this library, not hand-entered.
  static const CorrectionTable& teleportation();

  PauliBits bits(int dataBit, int ancillaBit) const { return entries_.at(static_cast<std::size_t>(2 * dataBit + ancillaBit)); }
  ComplexMatrix unitary(int dataBit, int ancillaBit) const { return pauliBitsMatrix(bits(dataBit, ancillaBit)); }
  const std::array<PauliBits, 4>& entries() const { return entries_; }

 private:
  std::array<PauliBits, 4> entries_;
};

struct UnitaryGate {
  GateKind kind;
  std::vector<int> targets;
  ComplexMatrix matrix;
  double angle = 0.0;  // rotations only
  std::string label;
};

struct ChannelOp {
  KrausChannel channel;
  std::string label;
};

/// Free evolution with every coupling refocused; each qubit relaxes with the
/// circuit's per-qubit parameters.
struct Delay {
  double duration;
};

using GateEvent = std::variant<UnitaryGate, ChannelOp, Delay>;

namespace gate {
UnitaryGate identity(int q);
UnitaryGate hadamard(int q);
UnitaryGate pauli(int q, Pauli p);
UnitaryGate rx(int q, double angle);
UnitaryGate ry(int q, double angle);
UnitaryGate rz(int q, double angle);
UnitaryGate cnot(int control, int target);
UnitaryGate cz(int a, int b);
UnitaryGate controlledCorrection(int data, int ancilla, int target, const CorrectionTable& table);
/// Throws std::invalid_argument if `u` is not unitary within 1e-10.
UnitaryGate custom(std::vector<int> targets, ComplexMatrix u, std::string label = "U");
}  // namespace gate

/// Register roles; the spin list of the molecule follows the same order.
struct Roles {
  int data = 0;     // C2
  int ancilla = 1;  // C1
  int target = 2;   // H
};

class Circuit {
 public:
  /// `relaxation` has one entry per qubit and drives Delay events.
  Circuit(int numQubits, std::vector<RelaxationParams> relaxation, Roles roles = {});

  /// Throws std::invalid_argument if an event touches a qubit outside the
  /// register or a delay is negative.
  Circuit& append(GateEvent event);
  Circuit& append(const std::vector<GateEvent>& events);

  int numQubits() const { return numQubits_; }
  const std::vector<GateEvent>& events() const { return events_; }
  const Roles& roles() const { return roles_; }
  const std::vector<RelaxationParams>& relaxation() const { return relaxation_; }
  /// Qubit read out at the end of the experiment.
  int readout() const { return readout_; }
  void setReadout(int q);

 private:
  int numQubits_;
  std::vector<RelaxationParams> relaxation_;
  Roles roles_;
  int readout_;
  std::vector<GateEvent> events_;
};

/// Hadamard on `control`, then CNOT control -> target: |00> -> (|00>+|11>)/sqrt2.
std::vector<GateEvent> entangleGate(int control = 1, int target = 2);
/// CNOT data -> ancilla, then Hadamard on data: Bell states -> computational basis.
std::vector<GateEvent> bellToComputational(int data = 0, int ancilla = 1);
/// Correction for one readout branch, acting on `target`.
UnitaryGate conditionalCorrection(int dataBit, int ancillaBit, int target = 2);

/// Teleports the data spin onto the target spin with a decoherence delay
/// standing in for the Bell measurement. Readout qubit: target.
Circuit teleportCircuit(double delay, const MoleculeModel& model);
/// Entangles ancilla and target, lets the carbons decohere, reads the data
/// spin. Readout qubit: data.
Circuit controlCircuit(double delay, const MoleculeModel& model);

/// input (on data) tensored with |0><0| on every other qubit.
DensityMatrix initialRegister(const Circuit& circuit, const DensityMatrix& inputData);

/// Executes every event in order on the initial register.
DensityMatrix runCircuit(const Circuit& circuit, const DensityMatrix& inputData);

/// Applies a single event to a full-register state.
DensityMatrix applyEvent(const DensityMatrix& rho, const GateEvent& event,
                         const std::vector<RelaxationParams>& relaxation);

}  // namespace nmrtele

#endif  // NMRTELE_CIRCUITS_HPP
