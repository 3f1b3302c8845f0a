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

#include "nmrtele/pulse.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace nmrtele {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

PulseSchedule rf(int spin, RfAxis axis, double angle) {
  PulseSchedule s;
  s.append(RfRotation{spin, axis, angle});
  return s;
}

// Rz(theta) = Rx(pi/2) Ry(theta) Rx(-pi/2), listed in time order.
PulseSchedule rz(int spin, double angle) {
  PulseSchedule s;
  s.append(RfRotation{spin, RfAxis::X, -kPi / 2});
  s.append(RfRotation{spin, RfAxis::Y, angle});
  s.append(RfRotation{spin, RfAxis::X, kPi / 2});
  return s;
}

// H = X Ry(pi/2) up to phase.
PulseSchedule hadamard(int spin) {
  PulseSchedule s;
  s.append(RfRotation{spin, RfAxis::Y, kPi / 2});
  s.append(RfRotation{spin, RfAxis::X, kPi});
  return s;
}

PulseSchedule singleQubit(int spin, const ComplexMatrix& u) {
  const ZyzAngles e = zyzDecompose(u);
  PulseSchedule s;
  if (std::abs(e.delta) > 0) s.append(rz(spin, e.delta));
  if (std::abs(e.gamma) > 0) s.append(rf(spin, RfAxis::Y, e.gamma));
  if (std::abs(e.beta) > 0) s.append(rz(spin, e.beta));
  return s;
}

double requireCoupling(const MoleculeModel& model, int a, int b) {
  const auto j = model.activeCoupling(a, b);
  if (!j) {
    throw UnsupportedGate("no active coupling between " + model.spin(a).name + " and " + model.spin(b).name);
  }
  return *j;
}

// exp(-i pi J t ZZ / 2) at t = 1/(2|J|) is CZ up to Rz(-sgn(J) pi/2) on both
// spins and a global phase.
PulseSchedule controlledZ(int a, int b, const MoleculeModel& model, const PulseOptions& options) {
  const double j = requireCoupling(model, a, b);
  PulseSchedule s;
  s.append(FreeEvolution{1.0 / (2.0 * std::abs(j)), {{std::min(a, b), std::max(a, b)}}, options.relaxDuringGates});
  const double frame = j > 0 ? -kPi / 2 : kPi / 2;
  s.append(rz(a, frame));
  s.append(rz(b, frame));
  return s;
}

PulseSchedule controlledX(int control, int target, const MoleculeModel& model, const PulseOptions& options) {
  PulseSchedule s;
  s.append(hadamard(target));
  s.append(controlledZ(control, target, model, options));
  s.append(hadamard(target));
  return s;
}

std::optional<int> mediatorFor(int a, int b, const MoleculeModel& model) {
  for (int m = 0; m < model.numSpins(); ++m) {
    if (m == a || m == b) continue;
    if (model.activeCoupling(a, m) && model.activeCoupling(m, b)) return m;
  }
  return std::nullopt;
}

// Controlled X or Z from `control` onto `target`. Without a direct coupling
// the control parity is copied through a mediator m:
//   C-P(m,t) CNOT(c,m) C-P(m,t) CNOT(c,m)  applies P^(m + (m xor c)) = P^c.
PulseSchedule controlledPauli(bool isX, int control, int target, const MoleculeModel& model,
                              const PulseOptions& options) {
  auto direct = [&](int c) {
    return isX ? controlledX(c, target, model, options) : controlledZ(c, target, model, options);
  };
  if (model.activeCoupling(control, target)) return direct(control);
  const auto m = mediatorFor(control, target, model);
  if (!m) {
    throw UnsupportedGate("no coupling path from " + model.spin(control).name + " to " + model.spin(target).name);
  }
  PulseSchedule s;
  s.append(direct(*m));
  s.append(controlledX(control, *m, model, options));
  s.append(direct(*m));
  s.append(controlledX(control, *m, model, options));
  return s;
}

PulseSchedule compileCorrection(const UnitaryGate& g, const MoleculeModel& model, const PulseOptions& options) {
  const int data = g.targets[0];
  const int ancilla = g.targets[1];
  const int target = g.targets[2];
  // Recover the Z^z X^x table from the block-diagonal matrix.
  std::array<PauliBits, 4> bits{};
  for (int k = 0; k < 4; ++k) {
    const ComplexMatrix block = g.matrix.block(2 * k, 2 * k, 2, 2);
    bool found = false;
    for (int x = 0; x < 2 && !found; ++x) {
      for (int z = 0; z < 2 && !found; ++z) {
        const PauliBits b{x == 1, z == 1};
        if ((block - pauliBitsMatrix(b)).cwiseAbs().maxCoeff() < 1e-12) {
          bits[static_cast<std::size_t>(k)] = b;
          found = true;
        }
      }
    }
    if (!found) throw UnsupportedGate("controlled correction entry is not a Z^z X^x Pauli");
  }
  auto linear = [&](auto pick) {
    const bool b00 = pick(bits[0]), b01 = pick(bits[1]), b10 = pick(bits[2]), b11 = pick(bits[3]);
    if (b00 || (b11 != (b10 != b01))) {
      throw UnsupportedGate("controlled correction is not linear in the readout bits");
    }
    return std::pair{b10, b01};  // (depends on data, depends on ancilla)
  };
  const auto [xData, xAncilla] = linear([](const PauliBits& b) { return b.x; });
  const auto [zData, zAncilla] = linear([](const PauliBits& b) { return b.z; });

  PulseSchedule s;
  if (xAncilla) s.append(controlledPauli(true, ancilla, target, model, options));
  if (xData) s.append(controlledPauli(true, data, target, model, options));
  if (zAncilla) s.append(controlledPauli(false, ancilla, target, model, options));
  if (zData) s.append(controlledPauli(false, data, target, model, options));
  return s;
}

PulseSchedule compileUnitary(const UnitaryGate& g, const MoleculeModel& model, const PulseOptions& options) {
  for (int q : g.targets) {
    if (q < 0 || q >= model.numSpins()) throw std::invalid_argument("gate target has no spin in the model");
  }
  switch (g.kind) {
    case GateKind::Identity: return {};
    case GateKind::Hadamard: return hadamard(g.targets[0]);
    case GateKind::PauliX: return rf(g.targets[0], RfAxis::X, kPi);
    case GateKind::PauliY: return rf(g.targets[0], RfAxis::Y, kPi);
    case GateKind::PauliZ: return rz(g.targets[0], kPi);
    case GateKind::RotationX: return rf(g.targets[0], RfAxis::X, g.angle);
    case GateKind::RotationY: return rf(g.targets[0], RfAxis::Y, g.angle);
    case GateKind::RotationZ: return rz(g.targets[0], g.angle);
    case GateKind::Cnot: return controlledX(g.targets[0], g.targets[1], model, options);
    case GateKind::Cz: return controlledZ(g.targets[0], g.targets[1], model, options);
    case GateKind::ControlledCorrection: return compileCorrection(g, model, options);
    case GateKind::Custom:
      if (g.targets.size() == 1) return singleQubit(g.targets[0], g.matrix);
      throw UnsupportedGate("arbitrary multi-qubit unitary '" + g.label + "' has no pulse decomposition");
  }
  throw UnsupportedGate("unknown gate kind");
}

ComplexMatrix rfMatrix(const RfRotation& r, double error) {
  const double angle = r.angle * (1.0 + error);
  const Complex i(0.0, 1.0);
  const Pauli axis = r.axis == RfAxis::X ? Pauli::X : Pauli::Y;
  return std::cos(angle / 2) * gates::pauli(Pauli::I) - i * std::sin(angle / 2) * gates::pauli(axis);
}

// Diagonal of exp(-i H t) for the active listed couplings.
ComplexVector couplingPhases(const FreeEvolution& f, const MoleculeModel& model) {
  const int n = model.numSpins();
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXd energy = Eigen::VectorXd::Zero(dim);
  bool any = false;
  for (const auto& [a, b] : f.couplings) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw std::invalid_argument("bad coupling in schedule");
    const auto j = model.activeCoupling(a, b);
    if (!j) continue;
    any = true;
    for (Eigen::Index k = 0; k < dim; ++k) {
      const double za = ((k >> (n - 1 - a)) & 1) ? -1.0 : 1.0;
      const double zb = ((k >> (n - 1 - b)) & 1) ? -1.0 : 1.0;
      energy(k) += kPi * (*j) * za * zb / 2.0;
    }
  }
  ComplexVector phases = ComplexVector::Ones(dim);
  if (!any) return phases;
  if (!std::isfinite(f.duration)) throw std::invalid_argument("coupled evolution needs a finite duration");
  for (Eigen::Index k = 0; k < dim; ++k) phases(k) = std::polar(1.0, -energy(k) * f.duration);
  return phases;
}

}  // namespace

PulseSchedule& PulseSchedule::append(PulseStep step) {
  std::visit(Overloaded{
                 [](const RfRotation& r) {
                   if (!std::isfinite(r.angle)) throw std::invalid_argument("rf angle must be finite");
                 },
                 [](const FreeEvolution& f) {
                   if (std::isnan(f.duration) || f.duration < 0) throw std::invalid_argument("negative interval");
                 },
                 [](const ChannelStep&) {},
             },
             step);
  steps_.push_back(std::move(step));
  return *this;
}

PulseSchedule& PulseSchedule::append(const PulseSchedule& other) {
  for (const auto& s : other.steps_) steps_.push_back(s);
  return *this;
}

double PulseSchedule::totalDuration() const {
  double t = 0.0;
  for (const auto& s : steps_) {
    if (const auto* f = std::get_if<FreeEvolution>(&s)) t += f->duration;
  }
  return t;
}

ZyzAngles zyzDecompose(const ComplexMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2 || !isUnitary(u)) throw std::invalid_argument("not a 2x2 unitary");
  const Complex det = u.determinant();
  const Complex root = std::sqrt(det);
  const ComplexMatrix v = u / root;  // SU(2)
  const double gamma = 2.0 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
  double sum = 0.0;   // beta + delta
  double diff = 0.0;  // beta - delta
  // v(1,1) = cos(gamma/2) e^{i sum/2}, v(1,0) = sin(gamma/2) e^{i diff/2}; the
  // sign ambiguity of v shifts both by 2 pi, i.e. beta by 2 pi (a global sign).
  if (std::abs(v(1, 1)) > 1e-12) sum = 2.0 * std::arg(v(1, 1));
  if (std::abs(v(1, 0)) > 1e-12) diff = 2.0 * std::arg(v(1, 0));
  const double beta = (sum + diff) / 2.0;
  const double delta = (sum - diff) / 2.0;
  // Residual global phase of v relative to Rz(beta) Ry(gamma) Rz(delta).
  const Complex i(0.0, 1.0);
  auto rzm = [&](double a) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = std::exp(-i * a / 2.0);
    m(1, 1) = std::exp(i * a / 2.0);
    return m;
  };
  ComplexMatrix ry(2, 2);
  ry << std::cos(gamma / 2), -std::sin(gamma / 2), std::sin(gamma / 2), std::cos(gamma / 2);
  const ComplexMatrix rebuilt = rzm(beta) * ry * rzm(delta);
  const Complex overlap = (rebuilt.adjoint() * u).trace() / 2.0;
  return {std::arg(overlap), beta, gamma, delta};
}

PulseSchedule compileGate(const GateEvent& event, const MoleculeModel& model, const PulseOptions& options) {
  return std::visit(Overloaded{
                        [&](const UnitaryGate& g) { return compileUnitary(g, model, options); },
                        [&](const ChannelOp& c) {
                          PulseSchedule s;
                          s.append(ChannelStep{c.channel});
                          return s;
                        },
                        [&](const Delay& d) {
                          PulseSchedule s;
                          s.append(FreeEvolution{d.duration, {}, true});
                          return s;
                        },
                    },
                    event);
}

PulseSchedule compileCircuit(const Circuit& circuit, const MoleculeModel& model, const PulseOptions& options) {
  if (circuit.numQubits() != model.numSpins()) throw std::invalid_argument("circuit and molecule sizes differ");
  PulseSchedule s;
  for (const auto& e : circuit.events()) s.append(compileGate(e, model, options));
  return s;
}

DensityMatrix simulateSchedule(const PulseSchedule& schedule, const MoleculeModel& model, const DensityMatrix& rho,
                               const PulseOptions& options) {
  const int n = model.numSpins();
  if (rho.numQubits() != n) throw std::invalid_argument("state and molecule sizes differ");
  DensityMatrix state = rho;
  for (const auto& step : schedule.steps()) {
    state = std::visit(
        Overloaded{
            [&](const RfRotation& r) {
              if (r.spin < 0 || r.spin >= n) throw std::invalid_argument("rf pulse on a missing spin");
              const int t[] = {r.spin};
              return applyUnitary(state, rfMatrix(r, options.rfAngleError), t);
            },
            [&](const FreeEvolution& f) {
              const ComplexVector phases = couplingPhases(f, model);
              ComplexMatrix m = phases.asDiagonal() * state.matrix() * phases.conjugate().asDiagonal();
              DensityMatrix out = DensityMatrix::fromMatrixSymmetrized(std::move(m));
              // First-order split: coupling, then relaxation of each spin.
              if (f.relax) {
                for (int q = 0; q < n; ++q) {
                  const auto& p = model.spin(q).relaxation;
                  if (p.isNoiseless()) continue;
                  out = applyChannel(out, relaxationChannel(f.duration, p, q));
                }
              }
              return out;
            },
            [&](const ChannelStep& c) { return applyChannel(state, c.channel); },
        },
        step);
  }
  return state;
}

ComplexMatrix scheduleUnitary(const PulseSchedule& schedule, const MoleculeModel& model, const PulseOptions& options) {
  const int n = model.numSpins();
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& step : schedule.steps()) {
    std::visit(Overloaded{
                   [&](const RfRotation& r) {
                     const int t[] = {r.spin};
                     u = embedOperator(rfMatrix(r, options.rfAngleError), t, n) * u;
                   },
                   [&](const FreeEvolution& f) {
                     if (f.relax) {
                       for (const auto& s : model.spins()) {
                         if (!s.relaxation.isNoiseless() && f.duration > 0) {
                           throw std::invalid_argument("schedule relaxes; it has no unitary");
                         }
                       }
                     }
                     u = couplingPhases(f, model).asDiagonal() * u;
                   },
                   [&](const ChannelStep&) { throw std::invalid_argument("schedule contains a channel step"); },
               },
               step);
  }
  return u;
}

DensityMatrix runCircuitPulse(const Circuit& circuit, const MoleculeModel& model, const DensityMatrix& inputData,
                              const PulseOptions& options) {
  const PulseSchedule s = compileCircuit(circuit, model, options);
  return simulateSchedule(s, model, initialRegister(circuit, inputData), options);
}

}  // namespace nmrtele
