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
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nmrtele/cli/commands.hpp"
#include "nmrtele/cli/csv.hpp"

namespace nmrtele::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / ("nmrtele_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "nmrtele");
    out_.str("");
    err_.str("");
    return runCli(args, out_, err_);
  }

  fs::path dir(const std::string& name) const { return root_ / name; }

  std::string config(const std::string& text) const {
    const fs::path p = root_ / "config.json";
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path root_;
  std::ostringstream out_;
  std::ostringstream err_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_F(CliTest, TeleportWritesCurveThatRoundTrips) {
  ASSERT_EQ(run({"teleport", "--out", dir("t").string()}), kExitOk) << err_.str();
  for (const char* f : {"curve.csv", "process_R.csv", "process_chi_re.csv", "process_chi_im.csv", "summary.txt"}) {
    EXPECT_TRUE(fs::exists(dir("t") / f)) << f;
  }
  SweepConfig cfg;
  cfg.delays = defaultDelayGrid();
  const auto records = runSweep(cfg);
  const CsvTable t = readCsv(dir("t") / "curve.csv");
  ASSERT_EQ(t.header, (std::vector<std::string>{"delay", "fe"}));
  ASSERT_EQ(t.rows.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(t.rows[i][0], formatNumber(records[i].delay));
    EXPECT_EQ(t.rows[i][1], formatNumber(records[i].fe));
    const double parsed = std::stod(t.rows[i][1]);
    EXPECT_EQ(formatNumber(parsed), t.rows[i][1]);
    EXPECT_NEAR(parsed, records[i].fe, 1e-11);
  }
  const CsvTable r = readCsv(dir("t") / "process_R.csv");
  ASSERT_EQ(r.rows.size(), 4 * records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) {
        EXPECT_EQ(r.rows[4 * i + static_cast<std::size_t>(m)][2 + static_cast<std::size_t>(n)],
                  formatNumber(records[i].process.transferMatrix()(m, n)));
      }
    }
  }
  const std::string summary = slurp(dir("t") / "summary.txt");
  EXPECT_NE(summary.find("verdicts"), std::string::npos);
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRuns) {
  for (const std::vector<std::string>& cmd :
       {std::vector<std::string>{"teleport"}, {"control", "--engine", "pulse"}, {"compare"}, {"tomo", "teleport:0.4"}}) {
    ASSERT_EQ(run([&] { auto a = cmd; a.insert(a.end(), {"--out", dir("a").string()}); return a; }()), kExitOk);
    ASSERT_EQ(run([&] { auto a = cmd; a.insert(a.end(), {"--out", dir("b").string()}); return a; }()), kExitOk);
    for (const auto& entry : fs::directory_iterator(dir("a"))) {
      EXPECT_EQ(slurp(entry.path()), slurp(dir("b") / entry.path().filename())) << cmd[0] << entry.path();
    }
    fs::remove_all(dir("a"));
    fs::remove_all(dir("b"));
  }
}

TEST_F(CliTest, CsvFormatting) {
  EXPECT_EQ(formatNumber(1.0), "1.00000000000");
  EXPECT_EQ(formatNumber(-0.0), "0.00000000000");
  EXPECT_EQ(formatNumber(0.109090909090909), "0.109090909091");
  EXPECT_EQ(formatNumber(1e-20), "1.00000000000e-20");
  ASSERT_EQ(run({"compare", "--delays", "0,0.5", "--out", dir("c").string()}), kExitOk);
  const std::string text = slurp(dir("c") / "compare.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "delay,fe_teleport,fe_control");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST_F(CliTest, NoNoiseGivesPerfectCurves) {
  for (const char* cmd : {"teleport", "control"}) {
    ASSERT_EQ(run({cmd, "--no-noise", "--out", dir(cmd).string()}), kExitOk);
    const CsvTable t = readCsv(dir(cmd) / "curve.csv");
    for (const auto& row : t.rows) EXPECT_EQ(row[1], "1.00000000000") << cmd << row[0];
  }
}

TEST_F(CliTest, NoNoiseOverridesRfError) {
  ASSERT_EQ(run({"teleport", "--engine", "pulse", "--rf-error", "0.1", "--no-noise", "--delays", "0", "--out",
                 dir("n").string()}),
            kExitOk);
  EXPECT_EQ(readCsv(dir("n") / "curve.csv").rows.at(0).at(1), "1.00000000000");
}

TEST_F(CliTest, SingleDelaySkipsTheFit) {
  ASSERT_EQ(run({"teleport", "--delays", "0", "--out", dir("s").string()}), kExitOk) << err_.str();
  EXPECT_EQ(readCsv(dir("s") / "curve.csv").rows.size(), 1U);
  EXPECT_NE(slurp(dir("s") / "summary.txt").find("not enough delays"), std::string::npos);
}

TEST_F(CliTest, FlagsOverrideConfig) {
  const std::string cfg = config(R"({"delays": [0, 0.5, 1.0], "output": {"dir": ")" + dir("fromcfg").string() +
                                 R"("}, "noise": {"t1": false}})");
  ASSERT_EQ(run({"control", "--config", cfg}), kExitOk) << err_.str();
  EXPECT_EQ(readCsv(dir("fromcfg") / "curve.csv").rows.size(), 3U);
  ASSERT_EQ(run({"control", "--config", cfg, "--delays", "0.25", "--out", dir("flag").string()}), kExitOk);
  const auto rows = readCsv(dir("flag") / "curve.csv").rows;
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_EQ(rows[0][0], formatNumber(0.25));
  // T1 off: only dephasing, (1 + e^{-t/T2}) / 2.
  EXPECT_EQ(rows[0][1], formatNumber((1 + std::exp(-0.25 / 0.3)) / 2));
}

TEST_F(CliTest, CustomMoleculeFromConfig) {
  const std::string cfg = config(R"({
    "molecule": {
      "spins": [
        {"name": "A", "larmor_hz": 1.25e8, "t1": "inf", "t2": 0.2},
        {"name": "B", "larmor_hz": 1.26e8},
        {"name": "P", "larmor_hz": 2.0e8, "t1": 4, "t2": 2}
      ],
      "couplings": [{"spins": ["A", "B"], "j_hz": 80}, {"spins": ["B", "P"], "j_hz": -140}]
    },
    "engine": "pulse",
    "delays": [0, 0.2]
  })");
  ASSERT_EQ(run({"control", "--config", cfg, "--out", dir("m").string()}), kExitOk) << err_.str();
  EXPECT_EQ(readCsv(dir("m") / "curve.csv").rows[1][1], formatNumber((1 + std::exp(-1.0)) / 2));
}

TEST_F(CliTest, TomoNamedChannels) {
  ASSERT_EQ(run({"tomo", "dephasing:inf,0.3", "--out", dir("d").string()}), kExitOk) << err_.str();
  EXPECT_NE(slurp(dir("d") / "summary.txt").find("fe = 0.500000000000"), std::string::npos);
  ASSERT_EQ(run({"tomo", "depolarizing:1", "--out", dir("p").string()}), kExitOk);
  EXPECT_NE(slurp(dir("p") / "summary.txt").find("fe = 0.250000000000"), std::string::npos);
  ASSERT_EQ(run({"tomo", "identity", "--out", dir("i").string()}), kExitOk);
  const CsvTable r = readCsv(dir("i") / "process_R.csv");
  EXPECT_EQ(r.header, (std::vector<std::string>{"basis", "I", "X", "Y", "Z"}));
  EXPECT_EQ(r.rows[2][3], "1.00000000000");
  ASSERT_EQ(run({"tomo", "relaxation:0.3,25,0.3", "--out", dir("r").string()}), kExitOk);
  ASSERT_EQ(run({"tomo", "amplitude-damping:0.2", "--out", dir("a").string()}), kExitOk);
}

TEST_F(CliTest, TomoCircuitMatchesSweepPoint) {
  ASSERT_EQ(run({"tomo", "control:0.3", "--out", dir("c").string()}), kExitOk);
  SweepConfig cfg;
  cfg.delays = {0.3};
  cfg.experiment = ExperimentKind::Control;
  EXPECT_NE(slurp(dir("c") / "summary.txt").find("fe = " + formatNumber(runPoint(cfg, 0.3).fe)), std::string::npos);
}

TEST_F(CliTest, UsageAndConfigErrorsExitTwo) {
  const std::string out = dir("x").string();
  EXPECT_EQ(run({}), kExitUsage);
  EXPECT_EQ(run({"teleport", "--bogus"}), kExitUsage);
  EXPECT_EQ(run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(run({"teleport", "--delays", "abc", "--out", out}), kExitUsage);
  EXPECT_EQ(run({"teleport", "--delays", "0.5,0.1", "--out", out}), kExitUsage);
  EXPECT_EQ(run({"teleport", "--delays", "-1", "--out", out}), kExitUsage);
  EXPECT_EQ(run({"teleport", "--engine", "quantum", "--out", out}), kExitUsage);
  EXPECT_EQ(run({"tomo", "teleporter:0.1", "--out", out}), kExitUsage);
  EXPECT_EQ(run({"tomo", "dephasing:1", "--out", out}), kExitUsage);
  EXPECT_EQ(run({"tomo", "depolarizing:1.5", "--out", out}), kExitUsage);
  EXPECT_EQ(run({"tomo", "--out", out}), kExitUsage);
  EXPECT_EQ(run({"teleport", "--config", (root_ / "missing.json").string()}), kExitUsage);
  EXPECT_EQ(run({"teleport", "--config", config("{not json")}), kExitUsage);
  EXPECT_EQ(run({"teleport", "--config", config(R"({"delay": [0]})")}), kExitUsage);
  EXPECT_EQ(run({"teleport", "--config", config(R"({"molecule": {"carbon_t1": -3}})")}), kExitUsage);
  EXPECT_EQ(run({"teleport", "--config",
                 config(R"({"tomography": {"inputs": [[0,0,1],[0,0,1],[1,0,0],[0,1,0]]}})")}),
            kExitUsage);
  EXPECT_EQ(run({"teleport", "--engine", "pulse", "--config",
                 config(R"({"molecule": {"spins": [{"name": "A", "larmor_hz": 1e8}, {"name": "B", "larmor_hz": 1e8},
                   {"name": "C", "larmor_hz": 1e8}], "couplings": [{"spins": ["A", "B"], "j_hz": 50}]}})"),
                 "--out", out}),
            kExitUsage);
  std::ofstream(root_ / "file") << "x";
  EXPECT_EQ(run({"teleport", "--out", (root_ / "file" / "sub").string()}), kExitUsage);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}), kExitOk);
  EXPECT_NE(out_.str().find("teleport"), std::string::npos);
}

TEST_F(CliTest, ToolBinaryReportsExitStatus) {
  const std::string tool = NMRTELE_TOOL_PATH;
  const std::string quiet = " > /dev/null 2>&1";
  int status = std::system((tool + " tomo identity --out " + dir("ok").string() + quiet).c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitOk);
  status = std::system((tool + " tomo nope --out " + dir("bad").string() + quiet).c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitUsage);
}

}  // namespace
}  // namespace nmrtele::cli
