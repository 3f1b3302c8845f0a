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

#ifndef NMRTELE_CLI_CSV_HPP
#define NMRTELE_CLI_CSV_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nmrtele/experiment.hpp"

namespace nmrtele::cli {

/// Fixed 12 significant digits ("%#.12g"), '.' decimal separator, negative
/// zero written as zero.
std::string formatNumber(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable readCsv(const std::filesystem::path& path);
void writeCsv(const std::filesystem::path& path, const CsvTable& table);

/// delay,fe
CsvTable curveTable(std::span<const SweepRecord> records);
/// delay,fe_teleport,fe_control
CsvTable compareTable(const CurveComparison& comparison);

enum class MatrixPart { Transfer, ChiReal, ChiImag };

/// basis,I,X,Y,Z with rows in I,X,Y,Z order.
CsvTable processTable(const ProcessMap& process, MatrixPart part);
/// delay,basis,I,X,Y,Z with four rows per delay.
CsvTable processSweepTable(std::span<const SweepRecord> records, MatrixPart part);

}  // namespace nmrtele::cli

#endif  // NMRTELE_CLI_CSV_HPP
