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

#include "nmrtele/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nmrtele {

double decayFactor(double duration, double timescale) {
  if (std::isnan(duration) || duration < 0) throw std::invalid_argument("duration must be >= 0");
  if (timescale == kInfinity) return 1.0;
  if (duration == kInfinity) return 0.0;
  return std::exp(-duration / timescale);
}

RelaxationParams::RelaxationParams(double t1, double t2) : t1_(t1), t2_(t2) {
  if (!(t1 > 0) || !(t2 > 0)) throw std::invalid_argument("T1 and T2 must be positive");
  if (!(t2 <= 2.0 * t1)) {
    std::ostringstream os;
    os << "unphysical relaxation: T2 = " << t2 << " exceeds 2 T1 = " << 2.0 * t1;
    throw std::invalid_argument(os.str());
  }
}

KrausChannel::KrausChannel(std::vector<int> targets, std::vector<ComplexMatrix> elements)
    : targets_(std::move(targets)), elements_(std::move(elements)) {
  if (targets_.empty()) throw std::invalid_argument("channel needs at least one target");
  if (elements_.empty()) throw std::invalid_argument("channel needs at least one operation element");
  auto sorted = targets_;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0) throw std::invalid_argument("negative channel target");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate channel targets");
  }
  const Eigen::Index dim = Eigen::Index{1} << targets_.size();
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& a : elements_) {
    if (a.rows() != dim || a.cols() != dim) throw std::invalid_argument("operation element has wrong dimension");
    sum += a.adjoint() * a;
  }
  const double dev = (sum - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (!(dev <= kCptpTolerance)) {
    std::ostringstream os;
    os << "operation elements are not trace preserving (deviation " << dev << ")";
    throw std::invalid_argument(os.str());
  }
}

KrausChannel KrausChannel::identity(std::vector<int> targets) {
  const std::size_t dim = std::size_t{1} << targets.size();
  return KrausChannel(std::move(targets), {gates::identity(dim)});
}

KrausChannel KrausChannel::retarget(std::vector<int> targets) const {
  if (targets.size() != targets_.size()) throw std::invalid_argument("retarget changes channel arity");
  return KrausChannel(std::move(targets), elements_);
}

DensityMatrix applyChannel(const DensityMatrix& rho, const KrausChannel& channel) {
  const int n = rho.numQubits();
  for (int q : channel.targets()) {
    if (q >= n) throw std::invalid_argument("channel target outside register");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& a : channel.elements()) {
    const ComplexMatrix full = embedOperator(a, channel.targets(), n);
    out.noalias() += full * rho.matrix() * full.adjoint();
  }
  return DensityMatrix::fromMatrixSymmetrized(std::move(out));
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.targets() != second.targets()) throw std::invalid_argument("composition needs identical targets");
  std::vector<ComplexMatrix> elements;
  elements.reserve(first.elements().size() * second.elements().size());
  for (const auto& b : second.elements()) {
    for (const auto& a : first.elements()) elements.push_back(b * a);
  }
  return KrausChannel(first.targets(), std::move(elements));
}

namespace {

// Kraus pair for a pure dephasing with coherence factor `lambda`.
std::vector<ComplexMatrix> dephasingElements(double lambda) {
  lambda = std::clamp(lambda, 0.0, 1.0);
  return {std::sqrt((1.0 + lambda) / 2.0) * gates::pauli(Pauli::I),
          std::sqrt((1.0 - lambda) / 2.0) * gates::pauli(Pauli::Z)};
}

}  // namespace

KrausChannel dephasingChannel(double duration, double t2, int target) {
  if (!(t2 > 0)) throw std::invalid_argument("T2 must be positive");
  return KrausChannel({target}, dephasingElements(decayFactor(duration, t2)));
}

KrausChannel amplitudeDampingChannel(double gamma, int target) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("damping probability outside [0, 1]");
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - gamma);
  a1(0, 1) = std::sqrt(gamma);
  return KrausChannel({target}, {a0, a1});
}

KrausChannel relaxationChannel(double duration, const RelaxationParams& params, int target) {
  const double survive = decayFactor(duration, params.t1());  // 1 - gamma
  const double coherence = decayFactor(duration, params.t2());
  // Amplitude damping alone leaves sqrt(1 - gamma) on the off-diagonals; the
  // remainder is pure dephasing. t2 <= 2 t1 keeps the ratio <= 1.
  const double dampingCoherence = std::sqrt(survive);
  const double extra = dampingCoherence > 0.0 ? coherence / dampingCoherence : 0.0;
  const KrausChannel damping = amplitudeDampingChannel(1.0 - survive, target);
  const KrausChannel dephasing({target}, dephasingElements(extra));
  return compose(damping, dephasing);
}

KrausChannel depolarizingChannel(double p, int target) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing probability outside [0, 1]");
  // (1-p) rho + p I/2 = (1 - 3p/4) rho + (p/4)(X rho X + Y rho Y + Z rho Z)
  return KrausChannel({target}, {std::sqrt(1.0 - 0.75 * p) * gates::pauli(Pauli::I),
                                 std::sqrt(p / 4.0) * gates::pauli(Pauli::X),
                                 std::sqrt(p / 4.0) * gates::pauli(Pauli::Y),
                                 std::sqrt(p / 4.0) * gates::pauli(Pauli::Z)});
}

KrausChannel measurementDephasing(int first, int second) {
  if (first == second) throw std::invalid_argument("measurement dephasing needs two distinct qubits");
  std::vector<ComplexMatrix> projectors;
  for (Eigen::Index k = 0; k < 4; ++k) {
    ComplexMatrix p = ComplexMatrix::Zero(4, 4);
    p(k, k) = 1.0;
    projectors.push_back(std::move(p));
  }
  return KrausChannel({first, second}, std::move(projectors));
}

}  // namespace nmrtele
