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

#include "nmrtele/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nmrtele {

std::string_view toString(ExperimentKind kind) {
  return kind == ExperimentKind::Teleport ? "teleport" : "control";
}

std::string_view toString(Engine engine) { return engine == Engine::GateLevel ? "gate" : "pulse"; }

void SweepConfig::validate() const {
  if (delays.empty()) throw std::invalid_argument("delay grid is empty");
  for (std::size_t i = 0; i < delays.size(); ++i) {
    if (!std::isfinite(delays[i]) || delays[i] < 0) throw std::invalid_argument("delays must be finite and >= 0");
    if (i > 0 && !(delays[i] > delays[i - 1])) throw std::invalid_argument("delays must be strictly increasing");
  }
  if (model.numSpins() != 3) throw std::invalid_argument("sweeps need a three-spin molecule");
  if (!tomographyInputs.empty()) checkInputSet(tomographyInputs);
}

std::vector<double> defaultDelayGrid() {
  constexpr int kPoints = 12;
  constexpr double kLast = 1.2;
  std::vector<double> grid;
  for (int i = 0; i < kPoints; ++i) grid.push_back(kLast * i / (kPoints - 1));
  return grid;
}

Circuit buildCircuit(const SweepConfig& cfg, double delay) {
  return cfg.experiment == ExperimentKind::Teleport ? teleportCircuit(delay, cfg.model)
                                                    : controlCircuit(delay, cfg.model);
}

SweepRecord runPoint(const SweepConfig& cfg, double delay) {
  const Circuit circuit = buildCircuit(cfg, delay);
  const int readout[] = {circuit.readout()};
  ProcessFn evaluate;
  std::optional<PulseSchedule> schedule;
  if (cfg.engine == Engine::GateLevel) {
    evaluate = [&](const DensityMatrix& in) { return partialTrace(runCircuit(circuit, in), readout); };
  } else {
    schedule = compileCircuit(circuit, cfg.model, cfg.pulse);
    evaluate = [&](const DensityMatrix& in) {
      return partialTrace(simulateSchedule(*schedule, cfg.model, initialRegister(circuit, in), cfg.pulse), readout);
    };
  }
  ProcessMap process =
      cfg.tomographyInputs.empty() ? processTomography(evaluate) : processTomography(evaluate, cfg.tomographyInputs);
  double fe = entanglementFidelity(process);
  if (fe < -1e-9 || fe > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "entanglement fidelity " << fe << " outside [0, 1] at delay " << delay;
    throw InvariantViolation(os.str());
  }
  fe = std::clamp(fe, 0.0, 1.0);
  return {delay, fe, std::move(process)};
}

std::vector<SweepRecord> runSweepSerial(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<SweepRecord> out;
  out.reserve(cfg.delays.size());
  for (double d : cfg.delays) out.push_back(runPoint(cfg, d));
  return out;
}

std::vector<SweepRecord> runSweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::ptrdiff_t>(cfg.delays.size());
  std::vector<std::optional<SweepRecord>> slots(cfg.delays.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      slots[static_cast<std::size_t>(i)] = runPoint(cfg, cfg.delays[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(nmrtele_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<SweepRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// --- decay fit -----------------------------------------------------------------

namespace {

struct LinearSolution {
  double amplitude;
  double offset;
  double sse;
};

// Best A, C for a fixed tau.
LinearSolution solveLinear(std::span<const double> t, std::span<const double> y, double tau) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = std::exp(-t[static_cast<std::size_t>(i)] / tau);
    design(i, 1) = 1.0;
    rhs(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d sol = design.colPivHouseholderQr().solve(rhs);
  return {sol(0), sol(1), (design * sol - rhs).squaredNorm()};
}

double sumSquares(std::span<const double> t, std::span<const double> y, const Eigen::Vector3d& p) {
  double s = 0.0;
  const double tau = std::exp(p(1));
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = p(0) * std::exp(-t[i] / tau) + p(2) - y[i];
    s += r * r;
  }
  return s;
}

}  // namespace

DecayFit fitDecay(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw std::invalid_argument("times and values differ in length");
  if (times.size() < 4) throw std::invalid_argument("decay fit needs at least 4 points");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i])) throw std::invalid_argument("non-finite fit data");
  }
  const auto n = static_cast<double>(times.size());
  const auto [minIt, maxIt] = std::minmax_element(values.begin(), values.end());
  const double spread = *maxIt - *minIt;
  const double scale = std::max(1.0, std::max(std::abs(*minIt), std::abs(*maxIt)));

  // Seeds.
  double bestTau = kFitSeedMin;
  LinearSolution best{0, 0, std::numeric_limits<double>::infinity()};
  for (int k = 0; k < kFitSeedCount; ++k) {
    const double tau = kFitSeedMin * std::pow(kFitSeedMax / kFitSeedMin, static_cast<double>(k) / (kFitSeedCount - 1));
    const LinearSolution s = solveLinear(times, values, tau);
    if (s.sse < best.sse) {
      best = s;
      bestTau = tau;
    }
  }

  if (spread <= 1e-12 * scale) {
    DecayFit flat;
    flat.amplitude = 0.0;
    flat.offset = std::accumulate(values.begin(), values.end(), 0.0) / n;
    flat.timeConstant = bestTau;
    double sse = 0.0;
    for (double v : values) sse += (v - flat.offset) * (v - flat.offset);
    flat.residualNorm = std::sqrt(sse / n);
    flat.identifiable = false;
    return flat;
  }

  // Levenberg-Marquardt in (A, log tau, C).
  constexpr double kLogTauMin = -9.210340371976182;  // log(1e-4)
  constexpr double kLogTauMax = 11.512925464970229;  // log(1e5)
  Eigen::Vector3d p(best.amplitude, std::log(bestTau), best.offset);
  double sse = sumSquares(times, values, p);
  double lambda = 1e-3;
  bool converged = false;
  int iter = 0;
  const double sseFloor = 1e-30 * scale * scale * n;
  for (; iter < kFitMaxIterations; ++iter) {
    if (sse <= sseFloor) {
      converged = true;
      break;
    }
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(times.size()), 3);
    Eigen::VectorXd res(static_cast<Eigen::Index>(times.size()));
    const double tau = std::exp(p(1));
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double e = std::exp(-times[i] / tau);
      const auto row = static_cast<Eigen::Index>(i);
      jac(row, 0) = e;
      jac(row, 1) = p(0) * e * times[i] / tau;
      jac(row, 2) = 1.0;
      res(row) = p(0) * e + p(2) - values[i];
    }
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d grad = jac.transpose() * res;
    if (grad.cwiseAbs().maxCoeff() <= 1e-15 * scale) {
      converged = true;
      break;
    }
    bool improved = false;
    for (int attempt = 0; attempt < 60; ++attempt) {
      Eigen::Matrix3d damped = jtj;
      for (int d = 0; d < 3; ++d) damped(d, d) += lambda * std::max(jtj(d, d), 1e-300);
      const Eigen::Vector3d step = damped.ldlt().solve(-grad);
      Eigen::Vector3d trial = p + step;
      trial(1) = std::clamp(trial(1), kLogTauMin, kLogTauMax);
      const double trialSse = sumSquares(times, values, trial);
      if (std::isfinite(trialSse) && trialSse < sse) {
        const double relStep = (trial - p).norm() / (p.norm() + 1e-300);
        const double relGain = (sse - trialSse) / sse;
        p = trial;
        sse = trialSse;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (relStep < 1e-12 || relGain < 1e-14) converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) {
      // No downhill step at any damping: a stationary point.
      converged = true;
    }
    if (converged) break;
  }

  DecayFit fit;
  fit.amplitude = p(0);
  fit.timeConstant = std::exp(p(1));
  fit.offset = p(2);
  fit.residualNorm = std::sqrt(sse / n);
  fit.iterations = iter;
  const bool atEdge = p(1) <= kLogTauMin + 1e-9 || p(1) >= kLogTauMax - 1e-9;
  fit.identifiable = !atEdge && std::abs(fit.amplitude) > 1e-9 * scale;
  if (!converged) throw FitError("decay fit did not converge within the iteration cap", fit);
  return fit;
}

DecayFit fitDecay(std::span<const SweepRecord> records) {
  std::vector<double> t, y;
  for (const auto& r : records) {
    t.push_back(r.delay);
    y.push_back(r.fe);
  }
  return fitDecay(t, y);
}

CurveComparison compareCurves(std::span<const SweepRecord> teleport, std::span<const SweepRecord> control) {
  if (teleport.size() != control.size() || teleport.empty()) throw std::invalid_argument("delay grids differ");
  CurveComparison out;
  for (std::size_t i = 0; i < teleport.size(); ++i) {
    if (teleport[i].delay != control[i].delay) throw std::invalid_argument("delay grids differ");
    out.delays.push_back(teleport[i].delay);
    out.feTeleport.push_back(teleport[i].fe);
    out.feControl.push_back(control[i].fe);
  }
  auto tryFit = [](std::span<const SweepRecord> r) -> std::optional<DecayFit> {
    if (r.size() < 4) return std::nullopt;
    try {
      return fitDecay(r);
    } catch (const FitError& e) {
      return std::nullopt;
    }
  };
  out.teleportFit = tryFit(teleport);
  out.controlFit = tryFit(control);
  out.tauRatio = std::numeric_limits<double>::quiet_NaN();
  if (out.teleportFit && out.controlFit && out.teleportFit->identifiable && out.controlFit->identifiable) {
    out.tauRatio = out.teleportFit->timeConstant / out.controlFit->timeConstant;
  }

  std::size_t first = 0;
  while (first + 1 < out.delays.size() && out.delays[first] == 0.0) ++first;
  out.teleportAboveClassical = out.feTeleport[first] > 0.5;
  const double dropTeleport = out.feTeleport.front() - out.feTeleport.back();
  const double dropControl = out.feControl.front() - out.feControl.back();
  out.controlDecaysFaster = dropControl > dropTeleport;
  out.teleportDecaysSlowly = out.tauRatio > kSlowDecayRatio;  // false for NaN
  return out;
}

}  // namespace nmrtele
