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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion also has a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nmrtele/circuits.hpp"
#include "nmrtele/experiment.hpp"
#include "nmrtele/pulse.hpp"
#include "nmrtele/tomography.hpp"
#include "test_support.hpp"

namespace {

using namespace nmrtele;
using testing::Rng;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budgetSeconds;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double relaxationFe(double t, double t1, double t2) {
  return (1.0 + 2.0 * std::exp(-t / t2) + std::exp(-t / t1)) / 4.0;
}

double worstTeleportFidelity(const Circuit& c, int trials, Rng& rng) {
  double worst = 1.0;
  for (int k = 0; k < trials; ++k) {
    const DensityMatrix in = DensityMatrix::fromPure(testing::randomPure(1, rng));
    worst = std::min(worst, stateFidelity(partialTrace(runCircuit(c, in), {c.readout()}), in));
  }
  return worst;
}

Outcome noiselessIdentity() {
  Rng rng(1001);
  const double worst = worstTeleportFidelity(teleportCircuit(0.0, tceModel().withoutRelaxation()), 50, rng);
  return {worst >= 1 - 1e-9, "min fidelity over 50 inputs " + fmt("%.15f", worst)};
}

Outcome decoherenceImmunity() {
  Rng rng(1002);
  const MoleculeModel m = tceModel()
                              .withoutRelaxation()
                              .withRelaxation(0, {kInfinity, tce::kT2C2})
                              .withRelaxation(1, {kInfinity, tce::kT2C1});
  // Infinite delay: the carbons' coherences vanish exactly.
  const double worst = worstTeleportFidelity(teleportCircuit(kInfinity, m), 50, rng);
  return {worst >= 1 - 1e-9, "min fidelity with carbons fully dephased " + fmt("%.15f", worst)};
}

Outcome calibrationTriple() {
  auto fe = [](const KrausChannel& ch) {
    return entanglementFidelity(processTomography([&](const DensityMatrix& in) { return applyChannel(in, ch); }));
  };
  const double id = fe(KrausChannel::identity({0}));
  const double deph = fe(dephasingChannel(kInfinity, tce::kT2C2));
  const double rand = fe(depolarizingChannel(1.0));
  const bool ok = std::abs(id - 1.0) <= 1e-9 && std::abs(deph - 0.5) <= 1e-9 && std::abs(rand - 0.25) <= 1e-9;
  return {ok, "identity " + fmt("%.12f", id) + ", dephased " + fmt("%.12f", deph) + ", randomized " +
                  fmt("%.12f", rand)};
}

Outcome tomographyOracle() {
  Rng rng(1004);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const KrausChannel ch = testing::randomChannel(1, 1 + k % 4, rng);
    const double viaTomo =
        entanglementFidelity(processTomography([&](const DensityMatrix& in) { return applyChannel(in, ch); }));
    worst = std::max(worst, std::abs(viaTomo - feFromKraus(ch.elements())));
  }
  return {worst <= 1e-8, "max |Fe_tomo - Fe_kraus| over 100 channels " + fmt("%.3e", worst)};
}

SweepConfig defaultSweep(ExperimentKind kind, Engine engine = Engine::GateLevel) {
  SweepConfig cfg;
  cfg.delays = defaultDelayGrid();
  cfg.experiment = kind;
  cfg.engine = engine;
  return cfg;
}

Outcome controlOracle() {
  const auto r = runSweep(defaultSweep(ExperimentKind::Control));
  double worst = 0.0;
  for (const auto& p : r) worst = std::max(worst, std::abs(p.fe - relaxationFe(p.delay, tce::kT1Carbon, tce::kT2C2)));
  const DecayFit fit = fitDecay(r);
  const double rel = std::abs(fit.timeConstant - tce::kT2C2) / tce::kT2C2;
  return {worst <= 1e-8 && rel <= 0.15 && fit.identifiable,
          "max closed-form deviation " + fmt("%.3e", worst) + ", fitted tau " + fmt("%.4f", fit.timeConstant) +
              " s (" + fmt("%.1f", 100 * rel) + "% from T2)"};
}

Outcome qualitativeReproduction() {
  const auto tel = runSweep(defaultSweep(ExperimentKind::Teleport));
  const auto ctl = runSweep(defaultSweep(ExperimentKind::Control));
  const CurveComparison c = compareCurves(tel, ctl);
  const bool a = c.teleportAboveClassical;
  const bool b = c.controlFit && c.controlFit->identifiable &&
                 std::abs(c.controlFit->timeConstant - tce::kT2C2) <= 0.15 * tce::kT2C2 &&
                 std::abs(ctl.back().fe - 0.5) <= 0.02 && ctl.back().fe < ctl.front().fe;
  const bool cc = c.teleportDecaysSlowly;
  std::ostringstream d;
  d << "(a) " << (a ? "ok" : "no") << " Fe(" << fmt("%.4f", tel[1].delay) << ")=" << fmt("%.4f", tel[1].fe)
    << "; (b) " << (b ? "ok" : "no") << " control tau "
    << (c.controlFit ? fmt("%.4f", c.controlFit->timeConstant) : "n/a") << " s, Fe(end)=" << fmt("%.4f", ctl.back().fe)
    << "; (c) " << (cc ? "ok" : "no") << " tau ratio " << fmt("%.3f", c.tauRatio);
  return {a && b && cc, d.str()};
}

Outcome engineCrossValidation() {
  const auto gate = runSweep(defaultSweep(ExperimentKind::Teleport, Engine::GateLevel));
  const auto pulse = runSweep(defaultSweep(ExperimentKind::Teleport, Engine::PulseLevel));
  double worst = 0.0;
  for (std::size_t i = 0; i < gate.size(); ++i) worst = std::max(worst, std::abs(gate[i].fe - pulse[i].fe));
  double interval = 0.0;
  for (const auto& s : compileGate(gate::cnot(0, 1), tceModel()).steps()) {
    if (const auto* f = std::get_if<FreeEvolution>(&s)) interval += f->duration;
  }
  const bool ok = worst <= 1e-6 && std::abs(interval - 1.0 / (2 * 103.0)) <= 1e-12;
  return {ok, "max |Fe_pulse - Fe_gate| " + fmt("%.3e", worst) + ", CNOT(C2,C1) interval " +
                  fmt("%.4f", interval * 1e3) + " ms"};
}

Outcome invariantSuite() {
  Rng rng(1008);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  const int cases = 1000;
  for (int k = 0; k < cases; ++k) {
    bool ok = true;
    // Random state through a random CPTP channel on random targets.
    const int n = 1 + k % 3;
    const DensityMatrix rho = testing::randomDensity(n, rng, 1 + k % (1 << n));
    const int arity = n == 1 ? 1 : 1 + k % 2;
    std::vector<int> targets;
    for (int q = n - 1; static_cast<int>(targets.size()) < arity; --q) targets.push_back(q);
    const KrausChannel ch = testing::randomChannel(arity, 1 + k % 5, rng).retarget(targets);
    const DensityMatrix out = applyChannel(rho, ch);
    ok = ok && testing::isValidDensity(rho.matrix()) && testing::isValidDensity(out.matrix());

    // Semigroup laws on a random single-qubit state.
    const double ta = 2 * u(rng), tb = 2 * u(rng);
    const double t1 = 0.05 + 5 * u(rng), t2 = std::min(0.05 + 5 * u(rng), 2 * t1);
    const DensityMatrix q = testing::randomDensity(1, rng);
    auto gap = [&](const KrausChannel& split, const KrausChannel& joint) {
      return testing::maxAbs(applyChannel(q, split).matrix() - applyChannel(q, joint).matrix());
    };
    ok = ok && gap(compose(dephasingChannel(ta, t2), dephasingChannel(tb, t2)), dephasingChannel(ta + tb, t2)) <= 1e-10;
    ok = ok && gap(compose(relaxationChannel(ta, {t1, t2}), relaxationChannel(tb, {t1, t2})),
                   relaxationChannel(ta + tb, {t1, t2})) <= 1e-10;

    // Bell completeness in a randomly rotated local frame.
    const ComplexMatrix local =
        tensorProduct(testing::randomUnitary(2, rng), testing::randomUnitary(2, rng));
    ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
    for (const auto& b : bellStates()) {
      const ComplexVector v = local * b.amplitudes();
      sum += v * v.adjoint();
    }
    ok = ok && testing::maxAbs(sum - ComplexMatrix::Identity(4, 4)) <= 1e-12;
    if (!ok) ++violations;
  }
  return {violations == 0, std::to_string(cases) + " randomized cases, " + std::to_string(violations) + " violations"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "noiseless teleportation identity", 1.0, noiselessIdentity},
      {2, "decoherence immunity", 1.0, decoherenceImmunity},
      {3, "fidelity calibration triple", 1.0, calibrationTriple},
      {4, "tomography oracle equivalence", 5.0, tomographyOracle},
      {5, "control-curve oracle", 30.0, controlOracle},
      {6, "qualitative decay-curve reproduction", 30.0, qualitativeReproduction},
      {7, "engine cross-validation", 60.0, engineCrossValidation},
      {8, "CPTP/state invariant suite", 30.0, invariantSuite},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool inBudget = secs <= c.budgetSeconds;
    const bool pass = o.pass && inBudget;
    if (!pass) ++failures;
    std::printf("%s criterion %d (%s): %s [%.3f s / %.0f s budget%s]\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), o.detail.c_str(), secs, c.budgetSeconds, inBudget ? "" : ", over budget");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
