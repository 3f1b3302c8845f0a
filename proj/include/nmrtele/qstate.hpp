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

#ifndef NMRTELE_QSTATE_HPP
#define NMRTELE_QSTATE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>

#include <Eigen/Dense>

namespace nmrtele {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Raised when a numerical object leaves its physical domain (non-Hermitian
/// state, trace drift, negative eigenvalue). Signals a bug or accumulated
/// floating-point damage, never bad user input.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdSlack = 1e-9;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kExpectationImagTolerance = 1e-9;

/// Largest register the dense representation is meant for.
inline constexpr int kMaxQubits = 10;

enum class Pauli { I, X, Y, Z };

namespace gates {
ComplexMatrix identity(std::size_t dim = 2);
ComplexMatrix pauli(Pauli p);
ComplexMatrix hadamard();
}  // namespace gates

/// Tensor product of Pauli matrices; `labels` is a string over {I,X,Y,Z},
/// leftmost character acting on qubit 0.
ComplexMatrix pauliString(std::string_view labels);

/// Kronecker product, `a` is the left (more significant) factor.
ComplexMatrix tensorProduct(const ComplexMatrix& a, const ComplexMatrix& b);

/// Lifts a 2^k x 2^k operator acting on `targets` (in the operator's own
/// factor order) to the full 2^n register. Qubit 0 is the most significant
/// bit of a basis index.
ComplexMatrix embedOperator(const ComplexMatrix& op, std::span<const int> targets, int numQubits);

double maxHermitianDeviation(const ComplexMatrix& m);

/// Distance between two unitaries after removing the best global phase:
/// min over phi of max |a - e^{i phi} b|.
double phaseInsensitiveDistance(const ComplexMatrix& a, const ComplexMatrix& b);

bool isUnitary(const ComplexMatrix& u, double tol = 1e-10);

class PureState {
 public:
  /// Throws std::invalid_argument unless the length is a power of two and the
  /// norm is one within kNormTolerance.
  static PureState fromAmplitudes(ComplexVector amplitudes);
  static PureState basis(int numQubits, std::size_t index);
  /// alpha|0> + beta|1>, normalized here.
  static PureState qubit(Complex alpha, Complex beta);

  int numQubits() const { return numQubits_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  PureState(int n, ComplexVector amps) : numQubits_(n), amplitudes_(std::move(amps)) {}
  int numQubits_;
  ComplexVector amplitudes_;
};

PureState tensorProduct(const PureState& a, const PureState& b);

/// (|00>+|11>), (|00>-|11>), (|01>+|10>), (|01>-|10>), each normalized.
std::array<PureState, 4> bellStates();

/// Trace-one, Hermitian, positive-semidefinite operator on n qubits.
/// Every instance has passed the checks in fromMatrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and PSD; throws InvariantViolation.
  static DensityMatrix fromMatrix(ComplexMatrix m);
  /// As fromMatrix, but first checks the Hermitian deviation against the
  /// tolerance and then replaces m by (m + m^dagger)/2.
  static DensityMatrix fromMatrixSymmetrized(ComplexMatrix m);
  static DensityMatrix fromPure(const PureState& psi);
  static DensityMatrix basisState(int numQubits, std::size_t index);
  static DensityMatrix maximallyMixed(int numQubits);

  int numQubits() const { return numQubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }
  double purity() const;

 private:
  DensityMatrix(int n, ComplexMatrix m) : numQubits_(n), matrix_(std::move(m)) {}
  int numQubits_;
  ComplexMatrix matrix_;
};

DensityMatrix tensorProduct(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keepQubits`; kept qubits appear in ascending original
/// order regardless of the order given.
DensityMatrix partialTrace(const DensityMatrix& rho, std::span<const int> keepQubits);
DensityMatrix partialTrace(const DensityMatrix& rho, std::initializer_list<int> keepQubits);

/// tr(rho P) for a Pauli string of length numQubits.
double pauliExpectation(const DensityMatrix& rho, std::string_view labels);
/// Same for an arbitrary operator; rejects non-Hermitian input.
double pauliExpectation(const ComplexMatrix& rho, std::string_view labels);

/// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2.
double stateFidelity(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix applyUnitary(const DensityMatrix& rho, const ComplexMatrix& u, std::span<const int> targets);

}  // namespace nmrtele

#endif  // NMRTELE_QSTATE_HPP
