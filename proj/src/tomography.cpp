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

#include "nmrtele/tomography.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace nmrtele {

namespace {

constexpr double kProcessTolerance = 1e-9;

const std::array<ComplexMatrix, 4>& paulis() {
  static const std::array<ComplexMatrix, 4> p = {gates::pauli(Pauli::I), gates::pauli(Pauli::X),
                                                 gates::pauli(Pauli::Y), gates::pauli(Pauli::Z)};
  return p;
}

using Map16 = Eigen::Matrix<Complex, 16, 16>;

// vec(R)[4i + j] = sum_mn M[4i+j][4m+n] chi[m][n] with
// M = tr(P_i P_m P_j P_n) / 2.
const Map16& chiToTransferMap() {
  static const Map16 map = [] {
    Map16 m;
    const auto& p = paulis();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            m(4 * i + j, 4 * a + b) = (p[i] * p[a] * p[j] * p[b]).trace() / 2.0;
    return m;
  }();
  return map;
}

const Map16& transferToChiMap() {
  static const Map16 inv = chiToTransferMap().fullPivLu().inverse();
  return inv;
}

Eigen::Vector4d pauliVector(const DensityMatrix& rho) {
  const BlochVector b = measureBloch(rho);
  return {1.0, b.x, b.y, b.z};
}

}  // namespace

double BlochVector::length() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector measureBloch(const DensityMatrix& rho) {
  if (rho.numQubits() != 1) throw std::invalid_argument("Bloch vector of a multi-qubit state");
  return {pauliExpectation(rho, "X"), pauliExpectation(rho, "Y"), pauliExpectation(rho, "Z")};
}

DensityMatrix stateTomography(const BlochVector& expectations) {
  BlochVector b = expectations;
  if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(b.z)) {
    throw UnphysicalData("non-finite expectation value");
  }
  const double len = b.length();
  if (len > 1.0 + kBlochSlack) {
    std::ostringstream os;
    os << "Bloch vector length " << len << " exceeds 1";
    throw UnphysicalData(os.str());
  }
  if (len > 1.0) {
    b.x /= len;
    b.y /= len;
    b.z /= len;
  }
  const auto& p = paulis();
  ComplexMatrix m = (p[0] + b.x * p[1] + b.y * p[2] + b.z * p[3]) / 2.0;
  return DensityMatrix::fromMatrixSymmetrized(std::move(m));
}

ChiMatrix transferToChi(const TransferMatrix& r) {
  Eigen::Matrix<Complex, 16, 1> vecR;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) vecR(4 * i + j) = r(i, j);
  const Eigen::Matrix<Complex, 16, 1> vecChi = transferToChiMap() * vecR;
  ChiMatrix chi;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) chi(a, b) = vecChi(4 * a + b);
  return chi;
}

TransferMatrix chiToTransfer(const ChiMatrix& chi) {
  Eigen::Matrix<Complex, 16, 1> vecChi;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) vecChi(4 * a + b) = chi(a, b);
  const Eigen::Matrix<Complex, 16, 1> vecR = chiToTransferMap() * vecChi;
  TransferMatrix r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = vecR(4 * i + j).real();
  return r;
}

ProcessMap ProcessMap::fromTransferMatrix(const TransferMatrix& r) {
  if (!r.allFinite()) throw InvariantViolation("transfer matrix has non-finite entries");
  if (std::abs(r(0, 0) - 1.0) > kProcessTolerance) {
    std::ostringstream os;
    os << "process is not trace preserving: R[0][0] = " << r(0, 0);
    throw InvariantViolation(os.str());
  }
  ChiMatrix chi = transferToChi(r);
  if ((chi - chi.adjoint()).cwiseAbs().maxCoeff() > kProcessTolerance) {
    throw InvariantViolation("chi matrix is not Hermitian");
  }
  if (std::abs(chi.trace() - Complex(1.0, 0.0)) > kProcessTolerance) {
    throw InvariantViolation("chi matrix trace differs from 1");
  }
  return ProcessMap(r, chi);
}

double ProcessMap::minChiEigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ChiMatrix> es(0.5 * (chi_ + chi_.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<DensityMatrix> canonicalInputSet() {
  return {stateTomography({0, 0, 1}), stateTomography({0, 0, -1}), stateTomography({1, 0, 0}),
          stateTomography({0, 1, 0})};
}

namespace {

Eigen::Matrix4d inputMatrix(std::span<const DensityMatrix> inputs) {
  if (inputs.size() != 4) throw std::invalid_argument("process tomography needs exactly four input states");
  Eigen::Matrix4d v;
  for (int k = 0; k < 4; ++k) v.col(k) = pauliVector(inputs[static_cast<std::size_t>(k)]);
  return v;
}

Eigen::FullPivLU<Eigen::Matrix4d> checkedLu(const Eigen::Matrix4d& v) {
  Eigen::FullPivLU<Eigen::Matrix4d> lu(v);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) throw std::invalid_argument("tomography input states are not linearly independent");
  return lu;
}

}  // namespace

void checkInputSet(std::span<const DensityMatrix> inputs) { checkedLu(inputMatrix(inputs)); }

ProcessMap processTomography(const ProcessFn& evaluate, std::span<const DensityMatrix> inputs) {
  const Eigen::Matrix4d v = inputMatrix(inputs);
  const auto lu = checkedLu(v);
  Eigen::Matrix4d w;
  for (int k = 0; k < 4; ++k) {
    const DensityMatrix out = evaluate(inputs[static_cast<std::size_t>(k)]);
    if (out.numQubits() != 1) throw std::invalid_argument("process output must be a single qubit");
    // Reconstruct from the measured expectations, as an experiment would.
    w.col(k) = pauliVector(stateTomography(measureBloch(out)));
  }
  // R V = W
  return ProcessMap::fromTransferMatrix(w * lu.inverse());
}

ProcessMap processTomography(const ProcessFn& evaluate) {
  static const std::vector<DensityMatrix> inputs = canonicalInputSet();
  return processTomography(evaluate, inputs);
}

double entanglementFidelity(const ProcessMap& process) {
  const double fromChi = process.chiMatrix()(0, 0).real();
  const double fromR = process.transferMatrix().trace() / 4.0;
  if (std::abs(fromChi - fromR) > kProcessTolerance) {
    std::ostringstream os;
    os << "entanglement fidelity routes disagree: chi " << fromChi << " vs tr(R)/4 " << fromR;
    throw InvariantViolation(os.str());
  }
  return fromChi;
}

double feFromKraus(std::span<const ComplexMatrix> elements) {
  if (elements.empty()) throw std::invalid_argument("empty operation element list");
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  double fe = 0.0;
  for (const auto& a : elements) {
    if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("operation elements must be 2x2");
    sum += a.adjoint() * a;
    fe += std::norm(a.trace()) / 4.0;
  }
  if ((sum - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("operation elements are not trace preserving");
  }
  return fe;
}

ProcessMap clampToPhysical(const ProcessMap& process) {
  const ChiMatrix& chi = process.chiMatrix();
  Eigen::SelfAdjointEigenSolver<ChiMatrix> es(0.5 * (chi + chi.adjoint()));
  Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
  if (ev.sum() <= 0) throw InvariantViolation("chi matrix has no positive part");
  ev /= ev.sum();
  const ChiMatrix clamped = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  return ProcessMap::fromTransferMatrix(chiToTransfer(clamped));
}

}  // namespace nmrtele
