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

#include "nmrtele/circuits.hpp"

#include <cmath>
#include <stdexcept>

namespace nmrtele {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ComplexMatrix rotation(Pauli axis, double angle) {
  const Complex i(0.0, 1.0);
  return std::cos(angle / 2.0) * gates::pauli(Pauli::I) - i * std::sin(angle / 2.0) * gates::pauli(axis);
}

ComplexMatrix projector(int bit) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(bit, bit) = 1.0;
  return p;
}

ComplexVector applyToVector(const ComplexVector& psi, const UnitaryGate& g, int n) {
  return embedOperator(g.matrix, g.targets, n) * psi;
}

// Residual 2x2 operator on the target for readout branch (d, a): maps the
// data input |j> to the unnormalized target amplitudes of that branch.
ComplexMatrix branchResidual(int d, int a) {
  ComplexMatrix residual(2, 2);
  for (int j = 0; j < 2; ++j) {
    ComplexVector psi = PureState::basis(3, static_cast<std::size_t>(j) << 2).amplitudes();
    for (const auto& e : entangleGate(1, 2)) psi = applyToVector(psi, std::get<UnitaryGate>(e), 3);
    for (const auto& e : bellToComputational(0, 1)) psi = applyToVector(psi, std::get<UnitaryGate>(e), 3);
    const std::size_t base = (static_cast<std::size_t>(d) << 2) | (static_cast<std::size_t>(a) << 1);
    residual(0, j) = psi(static_cast<Eigen::Index>(base));
    residual(1, j) = psi(static_cast<Eigen::Index>(base | 1U));
  }
  return residual;
}

CorrectionTable deriveTeleportationTable() {
  std::array<PauliBits, 4> entries{};
  for (int d = 0; d < 2; ++d) {
    for (int a = 0; a < 2; ++a) {
      const ComplexMatrix residual = branchResidual(d, a);
      bool found = false;
      for (int x = 0; x < 2 && !found; ++x) {
        for (int z = 0; z < 2 && !found; ++z) {
          const PauliBits bits{x == 1, z == 1};
          const ComplexMatrix net = pauliBitsMatrix(bits) * residual;
          // Proportional to the identity with a nonzero factor.
          if (std::abs(net(0, 1)) < 1e-12 && std::abs(net(1, 0)) < 1e-12 &&
              std::abs(net(0, 0) - net(1, 1)) < 1e-12 && std::abs(net(0, 0)) > 1e-6) {
            entries[static_cast<std::size_t>(2 * d + a)] = bits;
            found = true;
          }
        }
      }
      if (!found) throw std::logic_error("teleportation branch residual is not a Pauli operator");
    }
  }
  return CorrectionTable(entries);
}

void checkTargets(const std::vector<int>& targets, int numQubits) {
  for (int q : targets) {
    if (q < 0 || q >= numQubits) throw std::invalid_argument("event target outside register");
  }
}

}  // namespace

ComplexMatrix pauliBitsMatrix(PauliBits bits) {
  ComplexMatrix m = gates::identity();
  if (bits.x) m = gates::pauli(Pauli::X) * m;
  if (bits.z) m = gates::pauli(Pauli::Z) * m;
  return m;
}

const CorrectionTable& CorrectionTable::teleportation() {
  static const CorrectionTable table = deriveTeleportationTable();
  return table;
}

namespace gate {

UnitaryGate identity(int q) { return {GateKind::Identity, {q}, gates::identity(), 0.0, "I"}; }
UnitaryGate hadamard(int q) { return {GateKind::Hadamard, {q}, gates::hadamard(), 0.0, "H"}; }

UnitaryGate pauli(int q, Pauli p) {
  switch (p) {
    case Pauli::I: return identity(q);
    case Pauli::X: return {GateKind::PauliX, {q}, gates::pauli(p), 0.0, "X"};
    case Pauli::Y: return {GateKind::PauliY, {q}, gates::pauli(p), 0.0, "Y"};
    case Pauli::Z: return {GateKind::PauliZ, {q}, gates::pauli(p), 0.0, "Z"};
  }
  throw std::invalid_argument("unknown Pauli");
}

UnitaryGate rx(int q, double angle) { return {GateKind::RotationX, {q}, rotation(Pauli::X, angle), angle, "Rx"}; }
UnitaryGate ry(int q, double angle) { return {GateKind::RotationY, {q}, rotation(Pauli::Y, angle), angle, "Ry"}; }
UnitaryGate rz(int q, double angle) { return {GateKind::RotationZ, {q}, rotation(Pauli::Z, angle), angle, "Rz"}; }

UnitaryGate cnot(int control, int target) {
  if (control == target) throw std::invalid_argument("CNOT control equals target");
  ComplexMatrix m = tensorProduct(projector(0), gates::identity()) +
                    tensorProduct(projector(1), gates::pauli(Pauli::X));
  return {GateKind::Cnot, {control, target}, m, 0.0, "CNOT"};
}

UnitaryGate cz(int a, int b) {
  if (a == b) throw std::invalid_argument("CZ on a single qubit");
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return {GateKind::Cz, {a, b}, m, 0.0, "CZ"};
}

UnitaryGate controlledCorrection(int data, int ancilla, int target, const CorrectionTable& table) {
  if (data == ancilla || data == target || ancilla == target) {
    throw std::invalid_argument("controlled correction needs three distinct qubits");
  }
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  for (int d = 0; d < 2; ++d) {
    for (int a = 0; a < 2; ++a) {
      m += tensorProduct(tensorProduct(projector(d), projector(a)), table.unitary(d, a));
    }
  }
  return {GateKind::ControlledCorrection, {data, ancilla, target}, m, 0.0, "C-correction"};
}

UnitaryGate custom(std::vector<int> targets, ComplexMatrix u, std::string label) {
  if (u.rows() != (Eigen::Index{1} << targets.size()) || !isUnitary(u)) {
    throw std::invalid_argument("custom gate matrix is not a unitary of the right size");
  }
  return {GateKind::Custom, std::move(targets), std::move(u), 0.0, std::move(label)};
}

}  // namespace gate

Circuit::Circuit(int numQubits, std::vector<RelaxationParams> relaxation, Roles roles)
    : numQubits_(numQubits), relaxation_(std::move(relaxation)), roles_(roles), readout_(roles.data) {
  if (numQubits <= 0 || numQubits > kMaxQubits) throw std::invalid_argument("bad register size");
  if (static_cast<int>(relaxation_.size()) != numQubits) {
    throw std::invalid_argument("need one relaxation entry per qubit");
  }
  checkTargets({roles.data}, numQubits);
}

void Circuit::setReadout(int q) {
  checkTargets({q}, numQubits_);
  readout_ = q;
}

Circuit& Circuit::append(GateEvent event) {
  std::visit(Overloaded{
                 [&](const UnitaryGate& g) {
                   checkTargets(g.targets, numQubits_);
                   if (!isUnitary(g.matrix)) throw std::invalid_argument("gate matrix is not unitary");
                 },
                 [&](const ChannelOp& c) { checkTargets(c.channel.targets(), numQubits_); },
                 [&](const Delay& d) {
                   if (std::isnan(d.duration) || d.duration < 0) throw std::invalid_argument("negative delay");
                 },
             },
             event);
  events_.push_back(std::move(event));
  return *this;
}

Circuit& Circuit::append(const std::vector<GateEvent>& events) {
  for (const auto& e : events) append(e);
  return *this;
}

std::vector<GateEvent> entangleGate(int control, int target) {
  return {gate::hadamard(control), gate::cnot(control, target)};
}

std::vector<GateEvent> bellToComputational(int data, int ancilla) {
  return {gate::cnot(data, ancilla), gate::hadamard(data)};
}

UnitaryGate conditionalCorrection(int dataBit, int ancillaBit, int target) {
  if ((dataBit != 0 && dataBit != 1) || (ancillaBit != 0 && ancillaBit != 1)) {
    throw std::invalid_argument("readout bits must be 0 or 1");
  }
  const PauliBits bits = CorrectionTable::teleportation().bits(dataBit, ancillaBit);
  if (bits.x && bits.z) return gate::custom({target}, pauliBitsMatrix(bits), "iY");
  if (bits.x) return gate::pauli(target, Pauli::X);
  if (bits.z) return gate::pauli(target, Pauli::Z);
  return gate::identity(target);
}

namespace {

void requireThreeSpins(const MoleculeModel& model) {
  if (model.numSpins() != 3) throw std::invalid_argument("teleportation needs a three-spin register");
}

}  // namespace

Circuit teleportCircuit(double delay, const MoleculeModel& model) {
  requireThreeSpins(model);
  if (std::isnan(delay) || delay < 0) throw std::invalid_argument("delay must be >= 0");
  const Roles r;
  Circuit c(3, model.relaxationByQubit(), r);
  c.append(entangleGate(r.ancilla, r.target));
  c.append(bellToComputational(r.data, r.ancilla));
  c.append(Delay{delay});
  // The environment's computational-basis record of the carbons.
  c.append(ChannelOp{measurementDephasing(r.data, r.ancilla), "measure"});
  c.append(gate::controlledCorrection(r.data, r.ancilla, r.target, CorrectionTable::teleportation()));
  c.setReadout(r.target);
  return c;
}

Circuit controlCircuit(double delay, const MoleculeModel& model) {
  requireThreeSpins(model);
  if (std::isnan(delay) || delay < 0) throw std::invalid_argument("delay must be >= 0");
  const Roles r;
  Circuit c(3, model.relaxationByQubit(), r);
  c.append(entangleGate(r.ancilla, r.target));
  c.append(Delay{delay});
  c.setReadout(r.data);
  return c;
}

DensityMatrix initialRegister(const Circuit& circuit, const DensityMatrix& inputData) {
  if (inputData.numQubits() != 1) throw std::invalid_argument("input must be a single-qubit state");
  const DensityMatrix zero = DensityMatrix::basisState(1, 0);
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < circuit.numQubits(); ++q) {
    m = tensorProduct(m, q == circuit.roles().data ? inputData.matrix() : zero.matrix());
  }
  return DensityMatrix::fromMatrixSymmetrized(std::move(m));
}

DensityMatrix applyEvent(const DensityMatrix& rho, const GateEvent& event,
                         const std::vector<RelaxationParams>& relaxation) {
  return std::visit(Overloaded{
                        [&](const UnitaryGate& g) { return applyUnitary(rho, g.matrix, g.targets); },
                        [&](const ChannelOp& c) { return applyChannel(rho, c.channel); },
                        [&](const Delay& d) {
                          if (static_cast<int>(relaxation.size()) != rho.numQubits()) {
                            throw std::invalid_argument("relaxation list does not match register");
                          }
                          DensityMatrix out = rho;
                          for (int q = 0; q < rho.numQubits(); ++q) {
                            const auto& p = relaxation[static_cast<std::size_t>(q)];
                            if (p.isNoiseless()) continue;
                            out = applyChannel(out, relaxationChannel(d.duration, p, q));
                          }
                          return out;
                        },
                    },
                    event);
}

DensityMatrix runCircuit(const Circuit& circuit, const DensityMatrix& inputData) {
  DensityMatrix rho = initialRegister(circuit, inputData);
  for (const auto& e : circuit.events()) rho = applyEvent(rho, e, circuit.relaxation());
  return rho;
}

}  // namespace nmrtele
