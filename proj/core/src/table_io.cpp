// Copyright 2026 The floquet-lindblad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "floq/table_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "floq/errors.hpp"

namespace floq {

namespace {

std::string join_branch(const BranchIndex& b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(b[i]);
  }
  return s;
}

BranchIndex split_branch(const std::string& s) {
  BranchIndex b;
  if (s.empty()) return b;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ';')) {
    try {
      std::size_t used = 0;
      b.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kIoError, "malformed branch field '" + s + "'");
    }
  }
  return b;
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::kIoError, "malformed number '" + s + "'");
  }
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw Error(ErrorCode::kIoError, "malformed boolean '" + s + "'");
}

std::string cell(const SweepResultRow& r, const std::string& col) {
  if (col == "omega") return format_real(r.omega);
  if (col == "E") return format_real(r.E);
  if (col == "gamma") return format_real(r.gamma);
  if (col == "phi") return format_real(r.phi);
  if (col == "T") return format_real(r.T);
  if (col == "exists") return r.exists ? "true" : "false";
  if (col == "mu_min") return format_real(r.mu_min);
  if (col == "d_rhp") return format_real(r.d_rhp);
  if (col == "tau_min") return format_real(r.tau_min);
  if (col == "n_c") return std::to_string(r.n_c);
  if (col == "branch") return join_branch(r.branch);
  if (col == "negative_pair") return r.negative_pair ? "true" : "false";
  if (col == "status") return to_string(r.status);
  throw Error(ErrorCode::kIoError, "unknown column " + col);
}

void set_cell(SweepResultRow& r, const std::string& col, const std::string& v) {
  if (col == "omega") r.omega = parse_real(v);
  else if (col == "E") r.E = parse_real(v);
  else if (col == "gamma") r.gamma = parse_real(v);
  else if (col == "phi") r.phi = parse_real(v);
  else if (col == "T") r.T = parse_real(v);
  else if (col == "exists") r.exists = parse_bool(v);
  else if (col == "mu_min") r.mu_min = parse_real(v);
  else if (col == "d_rhp") r.d_rhp = parse_real(v);
  else if (col == "tau_min") r.tau_min = parse_real(v);
  else if (col == "n_c") r.n_c = static_cast<int>(parse_real(v));
  else if (col == "branch") r.branch = split_branch(v);
  else if (col == "negative_pair") r.negative_pair = parse_bool(v);
  else if (col == "status") {
    auto s = parse_row_status(v);
    if (!s) throw Error(ErrorCode::kIoError, "unknown status '" + v + "'");
    r.status = *s;
  } else {
    throw Error(ErrorCode::kIoError, "unknown column " + col);
  }
}

nlohmann::json json_real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);  // "nan", "inf", "-inf"
}

double column_value(const SweepResultRow& r, OutputColumn c) {
  switch (c) {
    case OutputColumn::kMuMin: return r.mu_min;
    case OutputColumn::kDRhp: return r.d_rhp;
    case OutputColumn::kExists: return r.exists ? 1.0 : 0.0;
    case OutputColumn::kTauMin: return r.tau_min;
    case OutputColumn::kNC: return r.n_c;
    case OutputColumn::kBranch: {
      int m = 0;
      for (int x : r.branch) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0.0;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::optional<TableFormat> parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::kCsv;
  if (name == "json") return TableFormat::kJson;
  if (name == "pgm") return TableFormat::kPgm;
  return std::nullopt;
}

std::vector<std::string> table_columns(const std::vector<OutputColumn>& outputs) {
  std::vector<std::string> cols{"omega", "E", "gamma", "phi", "T"};
  auto add = [&](OutputColumn c) {
    if (std::find(outputs.begin(), outputs.end(), c) != outputs.end()) cols.push_back(to_string(c));
  };
  add(OutputColumn::kExists);
  add(OutputColumn::kMuMin);
  add(OutputColumn::kDRhp);
  add(OutputColumn::kTauMin);
  add(OutputColumn::kNC);
  add(OutputColumn::kBranch);
  cols.push_back("negative_pair");
  cols.push_back("status");
  return cols;
}

std::string to_csv(const std::vector<SweepResultRow>& rows,
                   const std::vector<OutputColumn>& outputs) {
  const auto cols = table_columns(outputs);
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cell(r, cols[i]);
    out += '\n';
  }
  return out;
}

std::vector<SweepResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kIoError, "csv without header");
  auto split = [](const std::string& l) {
    std::vector<std::string> f;
    std::stringstream ss(l);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (!l.empty() && l.back() == ',') f.emplace_back();
    return f;
  };
  const auto header = split(line);
  std::vector<SweepResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kIoError, "csv row has " + std::to_string(fields.size()) +
                                           " fields, header has " + std::to_string(header.size()));
    }
    SweepResultRow r;
    for (std::size_t i = 0; i < header.size(); ++i) set_cell(r, header[i], fields[i]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_json(const std::vector<SweepResultRow>& rows,
                    const std::vector<OutputColumn>& outputs) {
  const auto cols = table_columns(outputs);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    for (const auto& c : cols) {
      if (c == "exists") o[c] = r.exists;
      else if (c == "negative_pair") o[c] = r.negative_pair;
      else if (c == "status") o[c] = to_string(r.status);
      else if (c == "n_c") o[c] = r.n_c;
      else if (c == "branch") o[c] = r.branch;
      else if (c == "omega") o[c] = json_real(r.omega);
      else if (c == "E") o[c] = json_real(r.E);
      else if (c == "gamma") o[c] = json_real(r.gamma);
      else if (c == "phi") o[c] = json_real(r.phi);
      else if (c == "T") o[c] = json_real(r.T);
      else if (c == "mu_min") o[c] = json_real(r.mu_min);
      else if (c == "d_rhp") o[c] = json_real(r.d_rhp);
      else if (c == "tau_min") o[c] = json_real(r.tau_min);
    }
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string to_pgm(const std::vector<SweepResultRow>& rows, OutputColumn column) {
  // Recover the grid from the row-major order: E varies fastest.
  std::size_t n_e = 0;
  while (n_e < rows.size() && rows[n_e].omega == rows.front().omega) ++n_e;
  if (rows.empty() || n_e == 0 || rows.size() % n_e != 0) {
    throw Error(ErrorCode::kIoError, "rows do not form a complete grid");
  }
  const std::size_t n_w = rows.size() / n_e;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& r : rows) {
    const double v = column_value(r, column);
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::string out = "P5\n" + std::to_string(n_w) + " " + std::to_string(n_e) + "\n255\n";
  for (std::size_t y = 0; y < n_e; ++y) {
    const std::size_t ie = n_e - 1 - y;
    for (std::size_t iw = 0; iw < n_w; ++iw) {
      const double v = column_value(rows[iw * n_e + ie], column);
      unsigned char px = 0;
      if (std::isfinite(v)) {
        const double frac = hi > lo ? (v - lo) / (hi - lo) : 0.0;
        px = static_cast<unsigned char>(std::lround(255.0 * (1.0 - frac)));
      }
      out.push_back(static_cast<char>(px));
    }
  }
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout.write(content.data(), static_cast<std::streamsize>(content.size()));
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::kIoError, "failed to write stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error(ErrorCode::kIoError, "failed to write " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void emit(const std::vector<SweepResultRow>& rows, TableFormat format, const std::string& path,
          const std::vector<OutputColumn>& outputs, OutputColumn pgm_column) {
  switch (format) {
    case TableFormat::kCsv: write_text(path, to_csv(rows, outputs)); return;
    case TableFormat::kJson: write_text(path, to_json(rows, outputs)); return;
    case TableFormat::kPgm: write_text(path, to_pgm(rows, pgm_column)); return;
  }
}

}  // namespace floq
