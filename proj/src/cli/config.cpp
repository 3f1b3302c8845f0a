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

#include "nmrtele/cli/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace nmrtele::cli {

using nlohmann::json;

namespace {

void rejectUnknownKeys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double readSeconds(const json& v, const std::string& what) {
  if (v.is_string() && (v.get<std::string>() == "inf" || v.get<std::string>() == "infinity")) return kInfinity;
  if (!v.is_number()) throw ConfigError(what + " must be a number or \"inf\"");
  return v.get<double>();
}

double readNumber(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  return v.get<double>();
}

bool readBool(const json& v, const std::string& what) {
  if (!v.is_boolean()) throw ConfigError(what + " must be true or false");
  return v.get<bool>();
}

std::vector<double> checkedDelays(std::vector<double> delays) {
  SweepConfig probe;
  probe.delays = delays;
  try {
    probe.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad delay grid: ") + e.what());
  }
  return delays;
}

MoleculeModel parseMolecule(const json& m) {
  rejectUnknownKeys(m, {"spins", "couplings", "carbon_t1"}, "molecule");
  try {
    if (!m.contains("spins")) {
      if (m.contains("couplings")) throw ConfigError("molecule.couplings needs molecule.spins");
      const double carbonT1 = m.contains("carbon_t1") ? readSeconds(m["carbon_t1"], "molecule.carbon_t1") : tce::kT1Carbon;
      return tceModel(carbonT1);
    }
    if (m.contains("carbon_t1")) throw ConfigError("molecule.carbon_t1 only applies to the default molecule");
    std::vector<SpinParams> spins;
    for (const auto& s : m["spins"]) {
      rejectUnknownKeys(s, {"name", "larmor_hz", "t1", "t2"}, "molecule.spins[]");
      if (!s.contains("name") || !s["name"].is_string()) throw ConfigError("spin needs a string name");
      const std::string name = s["name"].get<std::string>();
      if (!s.contains("larmor_hz")) throw ConfigError("spin " + name + " needs larmor_hz");
      const double t1 = s.contains("t1") ? readSeconds(s["t1"], name + ".t1") : kInfinity;
      const double t2 = s.contains("t2") ? readSeconds(s["t2"], name + ".t2") : kInfinity;
      spins.push_back({name, readNumber(s["larmor_hz"], name + ".larmor_hz"), RelaxationParams(t1, t2)});
    }
    std::vector<Coupling> couplings;
    if (m.contains("couplings")) {
      for (const auto& c : m["couplings"]) {
        rejectUnknownKeys(c, {"spins", "j_hz", "active"}, "molecule.couplings[]");
        if (!c.contains("spins") || !c["spins"].is_array() || c["spins"].size() != 2) {
          throw ConfigError("coupling needs spins: [a, b]");
        }
        auto index = [&](const json& name) {
          if (!name.is_string()) throw ConfigError("coupling spins are names");
          for (std::size_t i = 0; i < spins.size(); ++i) {
            if (spins[i].name == name.get<std::string>()) return static_cast<int>(i);
          }
          throw ConfigError("coupling names unknown spin " + name.get<std::string>());
        };
        if (!c.contains("j_hz")) throw ConfigError("coupling needs j_hz");
        couplings.push_back({index(c["spins"][0]), index(c["spins"][1]), readNumber(c["j_hz"], "j_hz"),
                             c.contains("active") ? readBool(c["active"], "active") : true});
      }
    }
    return MoleculeModel(std::move(spins), std::move(couplings));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad molecule: ") + e.what());
  }
}

}  // namespace

MoleculeModel RunConfig::effectiveModel() const {
  if (noNoise) return model.withoutRelaxation();
  if (keepT1 && keepT2) return model;
  return model.withRelaxationToggles(keepT1, keepT2);
}

PulseOptions RunConfig::pulseOptions() const {
  PulseOptions opts;
  opts.rfAngleError = noNoise ? 0.0 : rfError;
  opts.relaxDuringGates = relaxDuringGates;
  return opts;
}

SweepConfig RunConfig::sweep(ExperimentKind kind) const {
  SweepConfig cfg;
  cfg.delays = delays;
  cfg.experiment = kind;
  cfg.model = effectiveModel();
  cfg.engine = engine;
  cfg.pulse = pulseOptions();
  for (const auto& b : tomographyInputs) cfg.tomographyInputs.push_back(stateTomography(b));
  return cfg;
}

RunConfig parseConfigText(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  rejectUnknownKeys(doc, {"molecule", "delays", "engine", "noise", "tomography", "output"}, "config");
  RunConfig cfg;
  try {
    if (doc.contains("molecule")) cfg.model = parseMolecule(doc["molecule"]);
    if (cfg.model.numSpins() != 3) throw ConfigError("molecule must have three spins (data, ancilla, target)");
    if (doc.contains("delays")) {
      if (!doc["delays"].is_array()) throw ConfigError("delays must be a list");
      std::vector<double> d;
      for (const auto& v : doc["delays"]) d.push_back(readNumber(v, "delay"));
      cfg.delays = checkedDelays(std::move(d));
    }
    if (doc.contains("engine")) {
      if (!doc["engine"].is_string()) throw ConfigError("engine must be a string");
      cfg.engine = parseEngine(doc["engine"].get<std::string>());
    }
    if (doc.contains("noise")) {
      const auto& n = doc["noise"];
      rejectUnknownKeys(n, {"t1", "t2", "rf_error", "relax_during_gates"}, "noise");
      if (n.contains("t1")) cfg.keepT1 = readBool(n["t1"], "noise.t1");
      if (n.contains("t2")) cfg.keepT2 = readBool(n["t2"], "noise.t2");
      if (n.contains("rf_error")) cfg.rfError = readNumber(n["rf_error"], "noise.rf_error");
      if (n.contains("relax_during_gates")) cfg.relaxDuringGates = readBool(n["relax_during_gates"], "relax_during_gates");
    }
    if (doc.contains("tomography")) {
      const auto& t = doc["tomography"];
      rejectUnknownKeys(t, {"inputs"}, "tomography");
      if (t.contains("inputs")) {
        if (!t["inputs"].is_array() || t["inputs"].size() != 4) throw ConfigError("tomography.inputs needs four vectors");
        for (const auto& v : t["inputs"]) {
          if (!v.is_array() || v.size() != 3) throw ConfigError("tomography input must be [x, y, z]");
          cfg.tomographyInputs.push_back({readNumber(v[0], "x"), readNumber(v[1], "y"), readNumber(v[2], "z")});
        }
        std::vector<DensityMatrix> states;
        for (const auto& b : cfg.tomographyInputs) states.push_back(stateTomography(b));
        checkInputSet(states);
      }
    }
    if (doc.contains("output")) {
      const auto& o = doc["output"];
      rejectUnknownKeys(o, {"dir"}, "output");
      if (o.contains("dir")) {
        if (!o["dir"].is_string()) throw ConfigError("output.dir must be a string");
        cfg.outDir = o["dir"].get<std::string>();
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  if (!std::isfinite(cfg.rfError)) throw ConfigError("noise.rf_error must be finite");
  return cfg;
}

RunConfig loadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseConfigText(ss.str());
}

std::vector<double> parseDelayList(std::string_view text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad delay '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw ConfigError("bad delay '" + item + "'");
    out.push_back(v);
  }
  return checkedDelays(std::move(out));
}

Engine parseEngine(std::string_view text) {
  if (text == "gate" || text == "gate-level") return Engine::GateLevel;
  if (text == "pulse" || text == "pulse-level") return Engine::PulseLevel;
  throw ConfigError("engine must be 'gate' or 'pulse', got '" + std::string(text) + "'");
}

void prepareOutputDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
  const auto probe = dir / ".nmrtele_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw ConfigError("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

}  // namespace nmrtele::cli
