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

#ifndef NMRTELE_CHANNELS_HPP
#define NMRTELE_CHANNELS_HPP

#include <limits>
#include <vector>

#include "nmrtele/qstate.hpp"

namespace nmrtele {

/// Sentinel for an unbounded delay or an absent relaxation process.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline constexpr double kCptpTolerance = 1e-10;

/// exp(-duration / timescale) with the limits made explicit: an infinite
/// timescale never decays, an infinite duration decays completely.
double decayFactor(double duration, double timescale);

/// T1/T2 pair for one spin. t1 or t2 may be kInfinity.
class RelaxationParams {
 public:
  /// Throws std::invalid_argument unless t1 > 0, t2 > 0 and t2 <= 2 t1.
  RelaxationParams(double t1, double t2);
  static RelaxationParams none() { return {kInfinity, kInfinity}; }

  double t1() const { return t1_; }
  double t2() const { return t2_; }
  bool isNoiseless() const { return t1_ == kInfinity && t2_ == kInfinity; }

  friend bool operator==(const RelaxationParams&, const RelaxationParams&) = default;

 private:
  double t1_;
  double t2_;
};

/// CPTP map given by operation elements acting on `targets` of a larger
/// register. Element factor order follows `targets`.
class KrausChannel {
 public:
  /// Throws std::invalid_argument for empty element lists, mismatched
  /// dimensions, duplicate targets or sum A^dagger A != I.
  KrausChannel(std::vector<int> targets, std::vector<ComplexMatrix> elements);

  static KrausChannel identity(std::vector<int> targets);

  const std::vector<int>& targets() const { return targets_; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  int arity() const { return static_cast<int>(targets_.size()); }

  /// Same elements acting on different qubits.
  KrausChannel retarget(std::vector<int> targets) const;

 private:
  std::vector<int> targets_;
  std::vector<ComplexMatrix> elements_;
};

/// rho -> sum_i A_i rho A_i^dagger on the channel's targets.
DensityMatrix applyChannel(const DensityMatrix& rho, const KrausChannel& channel);

/// Sequential composition on the same targets: `second` after `first`.
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);

/// Off-diagonals scale by exp(-duration/t2). duration may be kInfinity.
KrausChannel dephasingChannel(double duration, double t2, int target = 0);

/// Excited-state population decays by 1 - gamma towards |0>.
KrausChannel amplitudeDampingChannel(double gamma, int target = 0);

/// Amplitude damping with gamma = 1 - exp(-duration/t1) combined with the
/// pure dephasing that brings the total coherence factor to exp(-duration/t2).
KrausChannel relaxationChannel(double duration, const RelaxationParams& params, int target = 0);

/// rho -> (1 - p) rho + p I/2.
KrausChannel depolarizingChannel(double p, int target = 0);

/// Projection onto the computational basis of two qubits (four projectors).
KrausChannel measurementDephasing(int first, int second);

}  // namespace nmrtele

#endif  // NMRTELE_CHANNELS_HPP
