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

#include "nmrtele/cli/csv.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nmrtele::cli {

namespace {

constexpr std::array<const char*, 4> kBasis = {"I", "X", "Y", "Z"};

double partEntry(const ProcessMap& p, MatrixPart part, int r, int c) {
  switch (part) {
    case MatrixPart::Transfer: return p.transferMatrix()(r, c);
    case MatrixPart::ChiReal: return p.chiMatrix()(r, c).real();
    case MatrixPart::ChiImag: return p.chiMatrix()(r, c).imag();
  }
  return 0.0;
}

std::vector<std::string> splitLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string formatNumber(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%#.12g", v);
  return buf.data();
}

CsvTable readCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV " + path.string());
  t.header = splitLine(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    t.rows.push_back(splitLine(line));
    if (t.rows.back().size() != t.header.size()) throw std::runtime_error("ragged CSV row in " + path.string());
  }
  return t;
}

void writeCsv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  emit(table.header);
  for (const auto& r : table.rows) emit(r);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

CsvTable curveTable(std::span<const SweepRecord> records) {
  CsvTable t{{"delay", "fe"}, {}};
  for (const auto& r : records) t.rows.push_back({formatNumber(r.delay), formatNumber(r.fe)});
  return t;
}

CsvTable compareTable(const CurveComparison& c) {
  CsvTable t{{"delay", "fe_teleport", "fe_control"}, {}};
  for (std::size_t i = 0; i < c.delays.size(); ++i) {
    t.rows.push_back({formatNumber(c.delays[i]), formatNumber(c.feTeleport[i]), formatNumber(c.feControl[i])});
  }
  return t;
}

CsvTable processTable(const ProcessMap& process, MatrixPart part) {
  CsvTable t{{"basis", "I", "X", "Y", "Z"}, {}};
  for (int r = 0; r < 4; ++r) {
    std::vector<std::string> row{kBasis[static_cast<std::size_t>(r)]};
    for (int c = 0; c < 4; ++c) row.push_back(formatNumber(partEntry(process, part, r, c)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable processSweepTable(std::span<const SweepRecord> records, MatrixPart part) {
  CsvTable t{{"delay", "basis", "I", "X", "Y", "Z"}, {}};
  for (const auto& rec : records) {
    for (int r = 0; r < 4; ++r) {
      std::vector<std::string> row{formatNumber(rec.delay), kBasis[static_cast<std::size_t>(r)]};
      for (int c = 0; c < 4; ++c) row.push_back(formatNumber(partEntry(rec.process, part, r, c)));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

}  // namespace nmrtele::cli
