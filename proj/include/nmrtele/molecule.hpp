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

#ifndef NMRTELE_MOLECULE_HPP
#define NMRTELE_MOLECULE_HPP

#include <optional>
#include <string>
#include <vector>

#include "nmrtele/channels.hpp"

namespace nmrtele {

struct SpinParams {
  std::string name;
  double larmorHz;
  RelaxationParams relaxation;
};

/// Scalar coupling between spins `a` and `b` (register indices). Inactive
/// couplings are considered refocused for the whole experiment.
struct Coupling {
  int a;
  int b;
  double jHz;
  bool active = true;
};

/// Spin system in register order: spin i is qubit i.
class MoleculeModel {
 public:
  /// Throws std::invalid_argument on self-couplings, duplicate pairs,
  /// out-of-range indices, duplicate names or non-positive frequencies.
  MoleculeModel(std::vector<SpinParams> spins, std::vector<Coupling> couplings);

  int numSpins() const { return static_cast<int>(spins_.size()); }
  const std::vector<SpinParams>& spins() const { return spins_; }
  const SpinParams& spin(int i) const { return spins_.at(static_cast<std::size_t>(i)); }
  std::optional<int> indexOf(const std::string& name) const;

  /// Stored with a < b.
  const std::vector<Coupling>& couplings() const { return couplings_; }

  /// J in Hz if the pair is coupled and the coupling is active. Symmetric.
  std::optional<double> activeCoupling(int a, int b) const;
  /// J in Hz regardless of the active flag.
  std::optional<double> coupling(int a, int b) const;

  /// Copy with every T1 and T2 set to infinity.
  MoleculeModel withoutRelaxation() const;
  /// Copy with T1 processes and/or pure-dephasing processes removed. Removing
  /// pure dephasing leaves T2 = 2 T1 (the T1-limited coherence time).
  MoleculeModel withRelaxationToggles(bool keepT1, bool keepPureDephasing) const;
  /// Copy with the coupling between a and b switched on or off.
  MoleculeModel withCouplingActive(int a, int b, bool active) const;
  /// Copy with only the listed spins' relaxation replaced.
  MoleculeModel withRelaxation(int spin, RelaxationParams params) const;

  std::vector<RelaxationParams> relaxationByQubit() const;

 private:
  std::vector<SpinParams> spins_;
  std::vector<Coupling> couplings_;
};

namespace tce {
inline constexpr double kLarmorH = 500.133491e6;
inline constexpr double kLarmorC1 = 125.772580e6;
inline constexpr double kLarmorC2 = kLarmorC1 - 911.0;
inline constexpr double kJHC1 = 201.0;
inline constexpr double kJC1C2 = 103.0;
inline constexpr double kT2C1 = 0.4;
inline constexpr double kT2C2 = 0.3;
inline constexpr double kT2H = 3.0;
/// Carbon T1 is quoted as a 20-30 s range; the midpoint is the default.
inline constexpr double kT1Carbon = 25.0;
inline constexpr double kT1H = 5.0;
}  // namespace tce

/// Labeled trichloroethylene in register order (C2, C1, H): the data,
/// ancilla and target spins of the teleportation circuit. The H-C2 and
/// chlorine couplings are not included (refocused throughout).
MoleculeModel tceModel(double carbonT1 = tce::kT1Carbon);

}  // namespace nmrtele

#endif  // NMRTELE_MOLECULE_HPP
