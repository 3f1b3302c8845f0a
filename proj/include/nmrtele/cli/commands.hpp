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

#ifndef NMRTELE_CLI_COMMANDS_HPP
#define NMRTELE_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "nmrtele/cli/config.hpp"

namespace nmrtele::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Commands write their files into cfg.outDir and a short report to `log`.
/// They throw ConfigError for bad input and InvariantViolation / FitError
/// for numerical failures; runCli turns those into exit codes.
void cmdTeleport(const RunConfig& cfg, std::ostream& log);
void cmdControl(const RunConfig& cfg, std::ostream& log);
void cmdCompare(const RunConfig& cfg, std::ostream& log);

/// Channel specs:
///   identity
///   dephasing:<t>,<t2>              t may be "inf"
///   relaxation:<t>,<t1>,<t2>
///   amplitude-damping:<gamma>
///   depolarizing:<p>
///   teleport:<delay>, control:<delay>   circuit process under cfg's model/engine
void cmdTomo(const RunConfig& cfg, std::string_view channelSpec, std::ostream& log);

/// Full command line (args[0] is the program name). Returns the exit status.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nmrtele::cli

#endif  // NMRTELE_CLI_COMMANDS_HPP
