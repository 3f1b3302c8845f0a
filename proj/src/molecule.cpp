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

#include "nmrtele/molecule.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace nmrtele {

MoleculeModel::MoleculeModel(std::vector<SpinParams> spins, std::vector<Coupling> couplings)
    : spins_(std::move(spins)), couplings_(std::move(couplings)) {
  if (spins_.empty() || static_cast<int>(spins_.size()) > kMaxQubits) {
    throw std::invalid_argument("molecule needs between 1 and 10 spins");
  }
  std::set<std::string> names;
  for (const auto& s : spins_) {
    if (!(s.larmorHz > 0) || !std::isfinite(s.larmorHz)) {
      throw std::invalid_argument("Larmor frequency of " + s.name + " must be positive");
    }
    if (!names.insert(s.name).second) throw std::invalid_argument("duplicate spin name " + s.name);
  }
  std::set<std::pair<int, int>> seen;
  for (auto& c : couplings_) {
    if (c.a == c.b) throw std::invalid_argument("self-coupling on spin " + std::to_string(c.a));
    if (c.a < 0 || c.b < 0 || c.a >= numSpins() || c.b >= numSpins()) {
      throw std::invalid_argument("coupling references a missing spin");
    }
    if (!std::isfinite(c.jHz) || c.jHz == 0.0) throw std::invalid_argument("coupling constant must be finite and nonzero");
    if (c.a > c.b) std::swap(c.a, c.b);
    if (!seen.insert({c.a, c.b}).second) throw std::invalid_argument("coupling listed twice");
  }
  std::sort(couplings_.begin(), couplings_.end(),
            [](const Coupling& x, const Coupling& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
}

std::optional<int> MoleculeModel::indexOf(const std::string& name) const {
  for (int i = 0; i < numSpins(); ++i) {
    if (spins_[static_cast<std::size_t>(i)].name == name) return i;
  }
  return std::nullopt;
}

std::optional<double> MoleculeModel::coupling(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (const auto& c : couplings_) {
    if (c.a == a && c.b == b) return c.jHz;
  }
  return std::nullopt;
}

std::optional<double> MoleculeModel::activeCoupling(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (const auto& c : couplings_) {
    if (c.a == a && c.b == b && c.active) return c.jHz;
  }
  return std::nullopt;
}

MoleculeModel MoleculeModel::withoutRelaxation() const {
  auto spins = spins_;
  for (auto& s : spins) s.relaxation = RelaxationParams::none();
  return {std::move(spins), couplings_};
}

MoleculeModel MoleculeModel::withRelaxationToggles(bool keepT1, bool keepPureDephasing) const {
  auto spins = spins_;
  for (auto& s : spins) {
    const double t1 = keepT1 ? s.relaxation.t1() : kInfinity;
    const double t2 = keepPureDephasing ? std::min(s.relaxation.t2(), 2.0 * t1) : 2.0 * t1;
    s.relaxation = RelaxationParams(t1, t2);
  }
  return {std::move(spins), couplings_};
}

MoleculeModel MoleculeModel::withCouplingActive(int a, int b, bool active) const {
  if (a > b) std::swap(a, b);
  auto couplings = couplings_;
  bool found = false;
  for (auto& c : couplings) {
    if (c.a == a && c.b == b) {
      c.active = active;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("no such coupling");
  return {spins_, std::move(couplings)};
}

MoleculeModel MoleculeModel::withRelaxation(int spin, RelaxationParams params) const {
  auto spins = spins_;
  spins.at(static_cast<std::size_t>(spin)).relaxation = params;
  return {std::move(spins), couplings_};
}

std::vector<RelaxationParams> MoleculeModel::relaxationByQubit() const {
  std::vector<RelaxationParams> out;
  out.reserve(spins_.size());
  for (const auto& s : spins_) out.push_back(s.relaxation);
  return out;
}

MoleculeModel tceModel(double carbonT1) {
  std::vector<SpinParams> spins = {
      {"C2", tce::kLarmorC2, RelaxationParams(carbonT1, tce::kT2C2)},
      {"C1", tce::kLarmorC1, RelaxationParams(carbonT1, tce::kT2C1)},
      {"H", tce::kLarmorH, RelaxationParams(tce::kT1H, tce::kT2H)},
  };
  std::vector<Coupling> couplings = {
      {0, 1, tce::kJC1C2, true},
      {1, 2, tce::kJHC1, true},
  };
  return {std::move(spins), std::move(couplings)};
}

}  // namespace nmrtele
