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


#include <gtest/gtest.h>

#include <cmath>

#include "nmrtele/channels.hpp"
#include "nmrtele/tomography.hpp"
#include "test_support.hpp"

namespace nmrtele {
namespace {

using testing::maxAbs;
using testing::randomChannel;
using testing::randomDensity;
using testing::Rng;

ProcessFn asProcess(const KrausChannel& ch) {
  return [ch](const DensityMatrix& in) { return applyChannel(in, ch); };
}

// <Phi+| (I x E)(|Phi+><Phi+|) |Phi+>, straight from the Choi state.
double choiFidelity(const KrausChannel& ch) {
  const ComplexVector phi = bellStates()[0].amplitudes();
  ComplexMatrix choi = ComplexMatrix::Zero(4, 4);
  for (const auto& a : ch.elements()) {
    const ComplexMatrix ia = tensorProduct(gates::identity(), a);
    choi += ia * phi * phi.adjoint() * ia.adjoint();
  }
  return (phi.adjoint() * choi * phi)(0, 0).real();
}

// R[m][n] = tr(P_m E(P_n)) / 2 with E(rho) = sum chi_ab P_a rho P_b.
TransferMatrix transferFromChiDirect(const ChiMatrix& chi) {
  const Pauli ps[] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  TransferMatrix r;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      ComplexMatrix out = ComplexMatrix::Zero(2, 2);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) out += chi(a, b) * gates::pauli(ps[a]) * gates::pauli(ps[n]) * gates::pauli(ps[b]);
      }
      r(m, n) = (gates::pauli(ps[m]) * out).trace().real() / 2.0;
    }
  }
  return r;
}

TEST(Tomography, FeAgreesWithKrausAndChoiRoutes) {
  Rng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const KrausChannel ch = randomChannel(1, 1 + trial % 4, rng);
    const double fe = entanglementFidelity(processTomography(asProcess(ch)));
    ASSERT_NEAR(fe, feFromKraus(ch.elements()), 1e-8);
    ASSERT_NEAR(fe, choiFidelity(ch), 1e-10);
  }
}

TEST(Tomography, CalibrationAnchors) {
  EXPECT_NEAR(entanglementFidelity(processTomography(asProcess(KrausChannel::identity({0})))), 1.0, 1e-12);
  EXPECT_NEAR(entanglementFidelity(processTomography(asProcess(dephasingChannel(kInfinity, 0.3)))), 0.5, 1e-9);
  EXPECT_NEAR(entanglementFidelity(processTomography(asProcess(depolarizingChannel(1.0)))), 0.25, 1e-9);
}

TEST(Tomography, RotatedStateIsNotIntactState) {
  Rng rng(52);
  for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
    const KrausChannel flip({0}, {gates::pauli(p)});
    EXPECT_NEAR(entanglementFidelity(processTomography(asProcess(flip))), 0.0, 1e-12);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix u = testing::randomUnitary(2, rng);
    const KrausChannel undone({0}, {u.adjoint() * u});
    EXPECT_NEAR(entanglementFidelity(processTomography(asProcess(undone))), 1.0, 1e-12);
    const KrausChannel rotated({0}, {u});
    EXPECT_NEAR(entanglementFidelity(processTomography(asProcess(rotated))), std::norm(u.trace()) / 4.0, 1e-10);
  }
}

TEST(Tomography, ReconstructionIsIndependentOfInputSet) {
  Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const KrausChannel ch = randomChannel(1, 3, rng);
    std::vector<DensityMatrix> other;
    for (int k = 0; k < 4; ++k) other.push_back(randomDensity(1, rng));
    const ProcessMap a = processTomography(asProcess(ch));
    const ProcessMap b = processTomography(asProcess(ch), other);
    ASSERT_LT((a.transferMatrix() - b.transferMatrix()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Tomography, FeRoutesAgreeExactly) {
  Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    const ProcessMap p = processTomography(asProcess(randomChannel(1, 2, rng)));
    ASSERT_NEAR(p.transferMatrix().trace() / 4.0, p.chiMatrix()(0, 0).real(), 1e-12);
  }
}

TEST(Tomography, TransferChiRoundTripAndDirectOracle) {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const ChiMatrix chi = randomDensity(2, rng).matrix();
    const TransferMatrix r = chiToTransfer(chi);
    ASSERT_LT((r - transferFromChiDirect(chi)).cwiseAbs().maxCoeff(), 1e-12);
    ASSERT_LT((transferToChi(r) - chi).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Tomography, KnownChannelMatrices) {
  const double lambda = std::exp(-1.0);
  const ProcessMap deph = processTomography(asProcess(dephasingChannel(0.3, 0.3)));
  ChiMatrix expectedChi = ChiMatrix::Zero();
  expectedChi(0, 0) = (1 + lambda) / 2;
  expectedChi(3, 3) = (1 - lambda) / 2;
  EXPECT_LT((deph.chiMatrix() - expectedChi).cwiseAbs().maxCoeff(), 1e-12);

  const double g = 0.3;
  const ProcessMap ad = processTomography(asProcess(amplitudeDampingChannel(g)));
  TransferMatrix r = TransferMatrix::Zero();
  r(0, 0) = 1;
  r(1, 1) = r(2, 2) = std::sqrt(1 - g);
  r(3, 0) = g;
  r(3, 3) = 1 - g;
  EXPECT_LT((ad.transferMatrix() - r).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GE(ad.minChiEigenvalue(), -1e-12);
}

TEST(Tomography, StateTomographySlack) {
  const DensityMatrix nearly = stateTomography({0.0, 0.0, 1.0 + 5e-7});
  EXPECT_NEAR(nearly(0, 0).real(), 1.0, 1e-15);
  EXPECT_THROW(stateTomography({0.0, 0.0, 1.0 + 1e-5}), UnphysicalData);
  EXPECT_THROW(stateTomography({std::nan(""), 0.0, 0.0}), UnphysicalData);
  Rng rng(56);
  const DensityMatrix rho = randomDensity(1, rng);
  EXPECT_LT(maxAbs(stateTomography(measureBloch(rho)).matrix() - rho.matrix()), 1e-12);
}

TEST(Tomography, InputSetMustSpan) {
  auto in = canonicalInputSet();
  EXPECT_NO_THROW(checkInputSet(in));
  in[3] = in[2];
  EXPECT_THROW(checkInputSet(in), std::invalid_argument);
  in.pop_back();
  EXPECT_THROW(checkInputSet(in), std::invalid_argument);
}

TEST(Tomography, NonTracePreservingKrausIsRejected) {
  const std::vector<ComplexMatrix> bad = {0.5 * gates::identity()};
  EXPECT_THROW(feFromKraus(bad), std::invalid_argument);
}

TEST(Tomography, ClampProjectsOntoCompletelyPositiveMaps) {
  // Transpose map: positive but not completely positive.
  TransferMatrix r = TransferMatrix::Identity();
  r(2, 2) = -1;
  const ProcessMap p = ProcessMap::fromTransferMatrix(r);
  EXPECT_LT(p.minChiEigenvalue(), -0.1);
  const ProcessMap c = clampToPhysical(p);
  EXPECT_GE(c.minChiEigenvalue(), -1e-12);
  EXPECT_NEAR(c.chiMatrix().trace().real(), 1.0, 1e-12);
}

TEST(Tomography, BadTransferMatrixIsRejected) {
  TransferMatrix r = TransferMatrix::Identity();
  r(0, 0) = 0.9;
  EXPECT_THROW(ProcessMap::fromTransferMatrix(r), InvariantViolation);
}

}  // namespace
}  // namespace nmrtele
