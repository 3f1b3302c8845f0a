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

#include "nmrtele/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nmrtele/cli/csv.hpp"

namespace nmrtele::cli {

namespace {

namespace fs = std::filesystem;

std::string yesNo(bool b) { return b ? "yes" : "no"; }

void writeText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

void writeProcessSweep(const fs::path& dir, std::span<const SweepRecord> records) {
  writeCsv(dir / "process_R.csv", processSweepTable(records, MatrixPart::Transfer));
  writeCsv(dir / "process_chi_re.csv", processSweepTable(records, MatrixPart::ChiReal));
  writeCsv(dir / "process_chi_im.csv", processSweepTable(records, MatrixPart::ChiImag));
}

void describeRun(std::ostream& os, const RunConfig& cfg) {
  const MoleculeModel model = cfg.effectiveModel();
  os << "engine: " << toString(cfg.engine) << "\n";
  os << "spins (register order data, ancilla, target):\n";
  for (const auto& s : model.spins()) {
    os << "  " << s.name << ": larmor " << formatNumber(s.larmorHz) << " Hz, T1 " << formatNumber(s.relaxation.t1())
       << " s, T2 " << formatNumber(s.relaxation.t2()) << " s\n";
  }
  for (const auto& c : model.couplings()) {
    os << "  J(" << model.spin(c.a).name << "," << model.spin(c.b).name << ") = " << formatNumber(c.jHz) << " Hz"
       << (c.active ? "" : " (refocused)") << "\n";
  }
  if (cfg.engine == Engine::PulseLevel) os << "rf angle error: " << formatNumber(cfg.pulseOptions().rfAngleError) << "\n";
  os << "delays: " << cfg.delays.size() << " points, " << formatNumber(cfg.delays.front()) << " .. "
     << formatNumber(cfg.delays.back()) << " s\n";
}

void describeFit(std::ostream& os, const std::string& name, const std::optional<DecayFit>& fit, std::size_t points) {
  os << name << " fit fe(t) = A exp(-t/tau) + C: ";
  if (!fit) {
    os << (points < 4 ? "not enough delays (need 4)" : "did not converge") << "\n";
    return;
  }
  os << "A = " << formatNumber(fit->amplitude) << ", tau = " << formatNumber(fit->timeConstant)
     << " s, C = " << formatNumber(fit->offset) << ", rms residual = " << formatNumber(fit->residualNorm)
     << (fit->identifiable ? "" : " (decay not identifiable)") << "\n";
}

void describeVerdicts(std::ostream& os, const CurveComparison& c) {
  std::size_t first = 0;
  while (first + 1 < c.delays.size() && c.delays[first] == 0.0) ++first;
  os << "verdicts:\n";
  os << "  teleport fe above classical 0.5 at delay " << formatNumber(c.delays[first]) << " s ("
     << formatNumber(c.feTeleport[first]) << "): " << yesNo(c.teleportAboveClassical) << "\n";
  os << "  control loses fidelity faster than teleport: " << yesNo(c.controlDecaysFaster) << "\n";
  os << "  teleport decay time exceeds " << formatNumber(kSlowDecayRatio) << "x control decay time (ratio "
     << formatNumber(c.tauRatio) << "): " << yesNo(c.teleportDecaysSlowly) << "\n";
}

std::optional<DecayFit> fitIfPossible(std::span<const SweepRecord> r) {
  if (r.size() < 4) return std::nullopt;
  return fitDecay(r);  // FitError propagates: exit 3
}

void runSingle(const RunConfig& cfg, ExperimentKind kind, std::ostream& log) {
  prepareOutputDir(cfg.outDir);
  const auto primary = runSweep(cfg.sweep(kind));
  const ExperimentKind other = kind == ExperimentKind::Teleport ? ExperimentKind::Control : ExperimentKind::Teleport;
  const auto companion = runSweep(cfg.sweep(other));
  const auto& tel = kind == ExperimentKind::Teleport ? primary : companion;
  const auto& ctl = kind == ExperimentKind::Teleport ? companion : primary;
  const CurveComparison cmp = compareCurves(tel, ctl);

  writeCsv(cfg.outDir / "curve.csv", curveTable(primary));
  writeProcessSweep(cfg.outDir, primary);

  std::ostringstream s;
  s << "experiment: " << toString(kind) << " (readout " << (kind == ExperimentKind::Teleport ? "target H" : "data C2")
    << ")\n";
  describeRun(s, cfg);
  s << "fe at smallest delay (" << formatNumber(primary.front().delay) << " s): " << formatNumber(primary.front().fe)
    << "\n";
  s << "fe at largest delay (" << formatNumber(primary.back().delay) << " s): " << formatNumber(primary.back().fe)
    << "\n";
  describeFit(s, std::string(toString(kind)), fitIfPossible(primary), primary.size());
  describeVerdicts(s, cmp);
  writeText(cfg.outDir / "summary.txt", s.str());
  log << s.str();
}

// Splits "name:a,b" into name and numeric arguments.
std::pair<std::string, std::vector<double>> parseChannelSpec(std::string_view spec) {
  const auto colon = spec.find(':');
  std::string name(spec.substr(0, colon));
  std::vector<double> args;
  if (colon != std::string_view::npos) {
    std::istringstream in{std::string(spec.substr(colon + 1))};
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item == "inf" || item == "infinity") {
        args.push_back(kInfinity);
        continue;
      }
      try {
        std::size_t used = 0;
        args.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ConfigError("bad channel argument '" + item + "'");
      }
    }
  }
  return {name, args};
}

ProcessFn channelProcess(const KrausChannel& ch) {
  return [ch](const DensityMatrix& in) { return applyChannel(in, ch); };
}

}  // namespace

void cmdTeleport(const RunConfig& cfg, std::ostream& log) { runSingle(cfg, ExperimentKind::Teleport, log); }
void cmdControl(const RunConfig& cfg, std::ostream& log) { runSingle(cfg, ExperimentKind::Control, log); }

void cmdCompare(const RunConfig& cfg, std::ostream& log) {
  prepareOutputDir(cfg.outDir);
  const auto tel = runSweep(cfg.sweep(ExperimentKind::Teleport));
  const auto ctl = runSweep(cfg.sweep(ExperimentKind::Control));
  const CurveComparison cmp = compareCurves(tel, ctl);
  writeCsv(cfg.outDir / "compare.csv", compareTable(cmp));

  std::ostringstream s;
  s << "experiment: compare (teleport readout H, control readout C2)\n";
  describeRun(s, cfg);
  s << "delay,fe_teleport,fe_control\n";
  for (std::size_t i = 0; i < cmp.delays.size(); ++i) {
    s << "  " << formatNumber(cmp.delays[i]) << "," << formatNumber(cmp.feTeleport[i]) << ","
      << formatNumber(cmp.feControl[i]) << "\n";
  }
  describeFit(s, "teleport", cmp.teleportFit, tel.size());
  describeFit(s, "control", cmp.controlFit, ctl.size());
  s << "tau ratio teleport/control: " << formatNumber(cmp.tauRatio) << "\n";
  describeVerdicts(s, cmp);
  writeText(cfg.outDir / "summary.txt", s.str());
  log << s.str();
}

void cmdTomo(const RunConfig& cfg, std::string_view channelSpec, std::ostream& log) {
  const auto [name, args] = parseChannelSpec(channelSpec);
  auto need = [&, &name = name, &args = args](std::size_t n) {
    if (args.size() != n) {
      throw ConfigError("channel '" + name + "' takes " + std::to_string(n) + " argument(s)");
    }
  };
  ProcessFn process;
  try {
    if (name == "identity") {
      need(0);
      process = channelProcess(KrausChannel::identity({0}));
    } else if (name == "dephasing") {
      need(2);
      process = channelProcess(dephasingChannel(args[0], args[1]));
    } else if (name == "relaxation") {
      need(3);
      process = channelProcess(relaxationChannel(args[0], RelaxationParams(args[1], args[2])));
    } else if (name == "amplitude-damping") {
      need(1);
      process = channelProcess(amplitudeDampingChannel(args[0]));
    } else if (name == "depolarizing") {
      need(1);
      process = channelProcess(depolarizingChannel(args[0]));
    } else if (name == "teleport" || name == "control") {
      need(1);
      SweepConfig sc = cfg.sweep(name == "teleport" ? ExperimentKind::Teleport : ExperimentKind::Control);
      sc.delays = {args[0]};
      sc.validate();
      const SweepRecord rec = runPoint(sc, args[0]);
      prepareOutputDir(cfg.outDir);
      writeCsv(cfg.outDir / "process_R.csv", processTable(rec.process, MatrixPart::Transfer));
      writeCsv(cfg.outDir / "process_chi_re.csv", processTable(rec.process, MatrixPart::ChiReal));
      writeCsv(cfg.outDir / "process_chi_im.csv", processTable(rec.process, MatrixPart::ChiImag));
      std::ostringstream s;
      s << "process: " << channelSpec << "\n";
      describeRun(s, cfg);
      s << "fe = " << formatNumber(rec.fe) << "\n";
      writeText(cfg.outDir / "summary.txt", s.str());
      log << s.str();
      return;
    } else {
      throw ConfigError("unknown channel '" + name + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bad channel parameters: " + std::string(e.what()));
  }

  const std::vector<DensityMatrix> inputs = [&] {
    std::vector<DensityMatrix> v;
    for (const auto& b : cfg.tomographyInputs) v.push_back(stateTomography(b));
    return v.empty() ? canonicalInputSet() : v;
  }();
  const ProcessMap pm = processTomography(process, inputs);
  const double fe = entanglementFidelity(pm);
  prepareOutputDir(cfg.outDir);
  writeCsv(cfg.outDir / "process_R.csv", processTable(pm, MatrixPart::Transfer));
  writeCsv(cfg.outDir / "process_chi_re.csv", processTable(pm, MatrixPart::ChiReal));
  writeCsv(cfg.outDir / "process_chi_im.csv", processTable(pm, MatrixPart::ChiImag));
  std::ostringstream s;
  s << "process: " << channelSpec << "\n";
  s << "fe = " << formatNumber(fe) << "\n";
  s << "min chi eigenvalue = " << formatNumber(pm.minChiEigenvalue()) << "\n";
  writeText(cfg.outDir / "summary.txt", s.str());
  log << s.str();
}

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Density-matrix simulation of NMR teleportation: sweeps, comparison, process tomography",
               "nmrtele"};
  app.require_subcommand(1);

  struct Flags {
    std::string config;
    std::string delays;
    std::string engine;
    std::string outDir;
    bool noNoise = false;
    bool noT1 = false;
    bool noT2 = false;
    std::optional<double> rfError;
    std::string channel;
  } flags;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON config file");
    sub->add_option("--delays", flags.delays, "comma-separated delays in seconds");
    sub->add_option("--engine", flags.engine, "gate | pulse");
    sub->add_option("--out", flags.outDir, "output directory");
    sub->add_flag("--no-noise", flags.noNoise, "disable all relaxation and rf errors");
    sub->add_flag("--no-t1", flags.noT1, "disable T1 (amplitude damping)");
    sub->add_flag("--no-t2", flags.noT2, "disable pure dephasing beyond the T1 limit");
    sub->add_option("--rf-error", flags.rfError, "fractional rf rotation-angle error (pulse engine)");
  };
  CLI::App* teleport = app.add_subcommand("teleport", "teleportation sweep, readout on H");
  CLI::App* control = app.add_subcommand("control", "control sweep, readout on C2");
  CLI::App* compare = app.add_subcommand("compare", "both sweeps on one grid");
  CLI::App* tomo = app.add_subcommand("tomo", "process tomography of a named channel or circuit");
  for (auto* sub : {teleport, control, compare, tomo}) common(sub);
  tomo->add_option("channel", flags.channel, "identity | dephasing:t,t2 | relaxation:t,t1,t2 | "
                                             "amplitude-damping:g | depolarizing:p | teleport:delay | control:delay")
      ->required();

  std::vector<char*> argv;
  std::vector<std::string> storage = args.empty() ? std::vector<std::string>{"nmrtele"} : args;
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nmrtele: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    RunConfig cfg = flags.config.empty() ? RunConfig{} : loadConfigFile(flags.config);
    if (!flags.delays.empty()) cfg.delays = parseDelayList(flags.delays);
    if (!flags.engine.empty()) cfg.engine = parseEngine(flags.engine);
    if (!flags.outDir.empty()) cfg.outDir = flags.outDir;
    if (flags.noNoise) cfg.noNoise = true;
    if (flags.noT1) cfg.keepT1 = false;
    if (flags.noT2) cfg.keepT2 = false;
    if (flags.rfError) {
      if (!std::isfinite(*flags.rfError)) throw ConfigError("--rf-error must be finite");
      cfg.rfError = *flags.rfError;
    }

    if (teleport->parsed()) cmdTeleport(cfg, out);
    else if (control->parsed()) cmdControl(cfg, out);
    else if (compare->parsed()) cmdCompare(cfg, out);
    else cmdTomo(cfg, flags.channel, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "nmrtele: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedGate& e) {
    err << "nmrtele: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FitError& e) {
    err << "nmrtele: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "nmrtele: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace nmrtele::cli
