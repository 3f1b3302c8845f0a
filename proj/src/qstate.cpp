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

#include "nmrtele/qstate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

namespace nmrtele {

namespace {

int log2Exact(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) return -1;
  return n;
}

std::vector<int> checkedQubitList(std::span<const int> qubits, int numQubits) {
  std::vector<int> out(qubits.begin(), qubits.end());
  for (int q : out) {
    if (q < 0 || q >= numQubits) {
      throw std::invalid_argument("qubit index " + std::to_string(q) + " outside register of " +
                                  std::to_string(numQubits));
    }
  }
  std::vector<int> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate qubit index");
  }
  return out;
}

// Bit of `index` that belongs to qubit q in an n-qubit register.
inline std::size_t bitOf(std::size_t index, int q, int n) { return (index >> (n - 1 - q)) & 1U; }

}  // namespace

namespace gates {

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix pauli(Pauli p) {
  ComplexMatrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

}  // namespace gates

ComplexMatrix pauliString(std::string_view labels) {
  if (labels.empty()) throw std::invalid_argument("empty Pauli string");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char c : labels) {
    Pauli p;
    switch (c) {
      case 'I': p = Pauli::I; break;
      case 'X': p = Pauli::X; break;
      case 'Y': p = Pauli::Y; break;
      case 'Z': p = Pauli::Z; break;
      default: throw std::invalid_argument(std::string("bad Pauli label '") + c + "'");
    }
    out = tensorProduct(out, gates::pauli(p));
  }
  return out;
}

ComplexMatrix tensorProduct(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix embedOperator(const ComplexMatrix& op, std::span<const int> targets, int numQubits) {
  const auto tq = checkedQubitList(targets, numQubits);
  const int k = static_cast<int>(tq.size());
  if (op.rows() != (Eigen::Index{1} << k) || op.cols() != op.rows()) {
    throw std::invalid_argument("operator dimension does not match target count");
  }
  const std::size_t dim = std::size_t{1} << numQubits;
  std::size_t targetMask = 0;
  for (int q : tq) targetMask |= std::size_t{1} << (numQubits - 1 - q);

  auto subIndex = [&](std::size_t full) {
    std::size_t s = 0;
    for (int j = 0; j < k; ++j) s = (s << 1) | bitOf(full, tq[j], numQubits);
    return s;
  };

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t rs = subIndex(r);
    for (std::size_t c = 0; c < dim; ++c) {
      if ((r & ~targetMask) != (c & ~targetMask)) continue;
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          op(static_cast<Eigen::Index>(rs), static_cast<Eigen::Index>(subIndex(c)));
    }
  }
  return out;
}

double maxHermitianDeviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double phaseInsensitiveDistance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("dimension mismatch");
  }
  // Best phase aligns the Hilbert-Schmidt overlap.
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

bool isUnitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

// --- PureState ---------------------------------------------------------------

PureState PureState::fromAmplitudes(ComplexVector amplitudes) {
  const int n = log2Exact(amplitudes.size());
  if (n <= 0 || n > kMaxQubits) throw std::invalid_argument("amplitude count must be 2^n, 1 <= n <= 10");
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
  return PureState(n, std::move(amplitudes));
}

PureState PureState::basis(int numQubits, std::size_t index) {
  if (numQubits <= 0 || numQubits > kMaxQubits || index >= (std::size_t{1} << numQubits)) {
    throw std::invalid_argument("basis index out of range");
  }
  ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << numQubits);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(numQubits, std::move(v));
}

PureState PureState::qubit(Complex alpha, Complex beta) {
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (norm == 0.0) throw std::invalid_argument("zero vector is not a state");
  ComplexVector v(2);
  v << alpha / norm, beta / norm;
  return PureState(1, std::move(v));
}

PureState tensorProduct(const PureState& a, const PureState& b) {
  ComplexVector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  }
  return PureState::fromAmplitudes(std::move(v));
}

std::array<PureState, 4> bellStates() {
  const double s = 1.0 / std::sqrt(2.0);
  auto make = [s](double c00, double c01, double c10, double c11) {
    ComplexVector v(4);
    v << c00 * s, c01 * s, c10 * s, c11 * s;
    return PureState::fromAmplitudes(std::move(v));
  };
  return {make(1, 0, 0, 1), make(1, 0, 0, -1), make(0, 1, 1, 0), make(0, 1, -1, 0)};
}

// --- DensityMatrix -------------------------------------------------------------

DensityMatrix DensityMatrix::fromMatrix(ComplexMatrix m) {
  if (m.rows() != m.cols()) throw InvariantViolation("density matrix must be square");
  const int n = log2Exact(m.rows());
  if (n <= 0 || n > kMaxQubits) throw InvariantViolation("density matrix dimension must be 2^n, 1 <= n <= 10");
  const double herm = maxHermitianDeviation(m);
  if (!(herm <= kHermitianTolerance)) {
    std::ostringstream os;
    os << "density matrix not Hermitian (deviation " << herm << ")";
    throw InvariantViolation(os.str());
  }
  const Complex tr = m.trace();
  if (!(std::abs(tr - Complex(1.0, 0.0)) <= kTraceTolerance)) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " differs from 1";
    throw InvariantViolation(os.str());
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const double minEig = es.eigenvalues().minCoeff();
  if (!(minEig >= -kPsdSlack)) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << minEig;
    throw InvariantViolation(os.str());
  }
  return DensityMatrix(n, std::move(m));
}

DensityMatrix DensityMatrix::fromMatrixSymmetrized(ComplexMatrix m) {
  const double herm = maxHermitianDeviation(m);
  if (!(herm <= kHermitianTolerance)) {
    std::ostringstream os;
    os << "operator drifted from Hermitian (deviation " << herm << ")";
    throw InvariantViolation(os.str());
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  return fromMatrix(std::move(h));
}

DensityMatrix DensityMatrix::fromPure(const PureState& psi) {
  const auto& v = psi.amplitudes();
  return DensityMatrix(psi.numQubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::basisState(int numQubits, std::size_t index) {
  return fromPure(PureState::basis(numQubits, index));
}

DensityMatrix DensityMatrix::maximallyMixed(int numQubits) {
  if (numQubits <= 0 || numQubits > kMaxQubits) throw std::invalid_argument("bad qubit count");
  const Eigen::Index dim = Eigen::Index{1} << numQubits;
  return DensityMatrix(numQubits, ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

DensityMatrix tensorProduct(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::fromMatrixSymmetrized(tensorProduct(a.matrix(), b.matrix()));
}

DensityMatrix partialTrace(const DensityMatrix& rho, std::span<const int> keepQubits) {
  const int n = rho.numQubits();
  auto keep = checkedQubitList(keepQubits, n);
  if (keep.empty()) throw std::invalid_argument("must keep at least one qubit");
  std::sort(keep.begin(), keep.end());
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);
  }
  const int k = static_cast<int>(keep.size());
  const std::size_t keptDim = std::size_t{1} << k;
  const std::size_t tracedDim = std::size_t{1} << traced.size();

  // Full basis index from the kept-subsystem index and the traced-subsystem index.
  auto compose = [&](std::size_t kept, std::size_t tr) {
    std::size_t full = 0;
    for (int j = 0; j < k; ++j) {
      full |= ((kept >> (k - 1 - j)) & 1U) << (n - 1 - keep[j]);
    }
    const int t = static_cast<int>(traced.size());
    for (int j = 0; j < t; ++j) {
      full |= ((tr >> (t - 1 - j)) & 1U) << (n - 1 - traced[j]);
    }
    return static_cast<Eigen::Index>(full);
  };

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(keptDim), static_cast<Eigen::Index>(keptDim));
  for (std::size_t r = 0; r < keptDim; ++r) {
    for (std::size_t c = 0; c < keptDim; ++c) {
      Complex acc = 0.0;
      for (std::size_t e = 0; e < tracedDim; ++e) acc += rho(compose(r, e), compose(c, e));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  }
  return DensityMatrix::fromMatrixSymmetrized(std::move(out));
}

DensityMatrix partialTrace(const DensityMatrix& rho, std::initializer_list<int> keepQubits) {
  return partialTrace(rho, std::span<const int>(keepQubits.begin(), keepQubits.size()));
}

double pauliExpectation(const ComplexMatrix& rho, std::string_view labels) {
  if (rho.rows() != rho.cols() || rho.rows() != (Eigen::Index{1} << labels.size())) {
    throw std::invalid_argument("Pauli string length does not match register size");
  }
  if (!(maxHermitianDeviation(rho) <= kHermitianTolerance)) {
    throw InvariantViolation("expectation value requested for a non-Hermitian operator");
  }
  const Complex v = (rho * pauliString(labels)).trace();
  if (std::abs(v.imag()) > kExpectationImagTolerance) {
    throw InvariantViolation("Pauli expectation has a non-negligible imaginary part");
  }
  return v.real();
}

double pauliExpectation(const DensityMatrix& rho, std::string_view labels) {
  if (static_cast<int>(labels.size()) != rho.numQubits()) {
    throw std::invalid_argument("Pauli string length does not match register size");
  }
  return pauliExpectation(rho.matrix(), labels);
}

namespace {

ComplexMatrix psdSqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

namespace {
constexpr double kPureTolerance = 1e-12;
}  // namespace

double stateFidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity of states with different dimensions");
  // A pure argument reduces Uhlmann fidelity to <psi|rho|psi>, which avoids
  // the sqrt(eps) noise of square-rooting numerically zero eigenvalues.
  for (const auto& pair : {std::array{&a, &b}, std::array{&b, &a}}) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pair[0]->matrix());
    const Eigen::Index top = es.eigenvalues().size() - 1;
    if (es.eigenvalues()(top) >= 1.0 - kPureTolerance) {
      const ComplexVector psi = es.eigenvectors().col(top);
      return std::clamp((psi.adjoint() * pair[1]->matrix() * psi)(0, 0).real(), 0.0, 1.0);
    }
  }
  const ComplexMatrix sa = psdSqrt(a.matrix());
  const ComplexMatrix inner = sa * b.matrix() * sa;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const double root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(root * root, 0.0, 1.0);
}

DensityMatrix applyUnitary(const DensityMatrix& rho, const ComplexMatrix& u, std::span<const int> targets) {
  const ComplexMatrix full = embedOperator(u, targets, rho.numQubits());
  return DensityMatrix::fromMatrixSymmetrized(full * rho.matrix() * full.adjoint());
}

}  // namespace nmrtele
