// Copyright 2026 The rmplus Authors.
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

#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "rmplus/harness.h"

namespace rmplus {

namespace {

constexpr std::string_view kColumns =
    "t,player,regret_max,gap,iter_var,restart,fp_k,fp_residual";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    // stod rejects "nan"/"inf" spellings inconsistently; accept fmt's forms.
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    throw std::invalid_argument(fmt::format("trace line {}: bad number '{}'", line, s));
  }
  return v;
}

long parse_long(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument(fmt::format("trace line {}: bad integer '{}'", line, s));
  }
  return v;
}

}  // namespace

void write_csv(const RunTrace& trace, std::ostream& out) {
  for (const auto& [k, v] : trace.header) out << "# " << k << '=' << v << '\n';
  out << kColumns << '\n';
  std::string line;
  for (const TraceRow& r : trace.rows) {
    line.clear();
    fmt::format_to(std::back_inserter(line), "{},{},{:.17g},{:.17g},{:.17g},{},{},{:.17g}\n",
                   r.t, r.player, r.regret_max, r.gap, r.iter_var, r.restart ? 1 : 0,
                   r.fp_k, r.fp_residual);
    out << line;
  }
}

std::string to_csv(const RunTrace& trace) {
  std::ostringstream out;
  write_csv(trace, out);
  return out.str();
}

CsvTrace read_csv(std::istream& in) {
  CsvTrace trace;
  std::string line;
  std::size_t line_no = 0;
  bool columns_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.substr(line.find_first_not_of("# "));
      const auto eq = body.find('=');
      if (eq != std::string::npos) {
        trace.header.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      }
      continue;
    }
    if (!columns_seen) {
      if (line != kColumns) {
        throw std::invalid_argument("trace: unexpected column header '" + line + "'");
      }
      columns_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 8) {
      throw std::invalid_argument(fmt::format("trace line {}: expected 8 fields", line_no));
    }
    TraceRow r;
    r.t = parse_long(f[0], line_no);
    r.player = static_cast<std::size_t>(parse_long(f[1], line_no));
    r.regret_max = parse_double(f[2], line_no);
    r.gap = parse_double(f[3], line_no);
    r.iter_var = parse_double(f[4], line_no);
    r.restart = parse_long(f[5], line_no) != 0;
    r.fp_k = parse_long(f[6], line_no);
    r.fp_residual = parse_double(f[7], line_no);
    trace.rows.push_back(r);
  }
  if (!columns_seen) throw std::invalid_argument("trace: missing column header");
  return trace;
}

}  // namespace rmplus
