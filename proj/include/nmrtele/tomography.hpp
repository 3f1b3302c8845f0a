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

#ifndef NMRTELE_TOMOGRAPHY_HPP
#define NMRTELE_TOMOGRAPHY_HPP

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "nmrtele/qstate.hpp"

namespace nmrtele {

// Conventions used everywhere in this library:
//   * Pauli basis order is (I, X, Y, Z), index 0..3.
//   * Transfer matrix R[m][n] = tr(P_m E(P_n)) / 2, so the Pauli vector
//     s(rho) = (tr rho, <X>, <Y>, <Z>) maps as s(E(rho)) = R s(rho).
//   * chi is defined by E(rho) = sum_mn chi[m][n] P_m rho P_n, trace one for
//     trace-preserving E, and chi[0][0] is the entanglement fidelity.

using TransferMatrix = Eigen::Matrix4d;
using ChiMatrix = Eigen::Matrix4cd;

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double length() const;
};

class UnphysicalData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kBlochSlack = 1e-6;

BlochVector measureBloch(const DensityMatrix& rho);

/// (I + xX + yY + zZ)/2. Lengths in (1, 1 + 1e-6] are rescaled to one;
/// longer vectors raise UnphysicalData.
DensityMatrix stateTomography(const BlochVector& expectations);

/// chi from R and back; mutually inverse linear maps.
ChiMatrix transferToChi(const TransferMatrix& r);
TransferMatrix chiToTransfer(const ChiMatrix& chi);

class ProcessMap {
 public:
  /// Builds chi from R and validates R[0][0] = 1, chi Hermitian and
  /// tr chi = 1 (all within 1e-9); throws InvariantViolation.
  static ProcessMap fromTransferMatrix(const TransferMatrix& r);

  const TransferMatrix& transferMatrix() const { return transfer_; }
  const ChiMatrix& chiMatrix() const { return chi_; }
  double minChiEigenvalue() const;

 private:
  ProcessMap(TransferMatrix r, ChiMatrix chi) : transfer_(std::move(r)), chi_(std::move(chi)) {}
  TransferMatrix transfer_;
  ChiMatrix chi_;
};

using ProcessFn = std::function<DensityMatrix(const DensityMatrix&)>;

/// |0>, |1>, |+>, |+i>.
std::vector<DensityMatrix> canonicalInputSet();

/// Throws std::invalid_argument if the four states are not linearly
/// independent as operators.
void checkInputSet(std::span<const DensityMatrix> inputs);

/// Runs each input through `evaluate`, reads the output Bloch vector, and
/// solves R V = W for the Pauli-vector matrices V (inputs) and W (outputs).
ProcessMap processTomography(const ProcessFn& evaluate, std::span<const DensityMatrix> inputs);
ProcessMap processTomography(const ProcessFn& evaluate);

/// chi[0][0]; cross-checked against tr(R)/4.
double entanglementFidelity(const ProcessMap& process);

/// sum_i |tr A_i|^2 / 4 for a CPTP set of 2x2 elements.
double feFromKraus(std::span<const ComplexMatrix> elements);

/// Projects chi onto the PSD cone (negative eigenvalues clipped) with unit
/// trace, and rebuilds R. For data with calibration errors.
ProcessMap clampToPhysical(const ProcessMap& process);

}  // namespace nmrtele

#endif  // NMRTELE_TOMOGRAPHY_HPP
