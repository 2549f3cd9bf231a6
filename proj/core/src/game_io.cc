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

#include "rmplus/game_io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace rmplus {

namespace {

class TokenReader {
 public:
  explicit TokenReader(std::vector<std::string> tokens)
      : tokens_(std::move(tokens)) {}

  bool done() const { return pos_ >= tokens_.size(); }

  const std::string& word() {
    if (done()) throw GameFormatError("unexpected end of game file");
    return tokens_[pos_++];
  }

  std::size_t count() {
    const std::string& w = word();
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size() || v == 0) {
      throw GameFormatError("expected a positive integer, got '" + w + "'");
    }
    return v;
  }

  double number() {
    const std::string& w = word();
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != w.size()) throw GameFormatError("expected a number, got '" + w + "'");
    return v;
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

void append_row(std::string& out, const double* values, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) out += ' ';
    out += fmt::format("{:.17g}", values[j]);
  }
  out += '\n';
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  bool comment = false;
  for (char c : text) {
    if (c == '\n') comment = false;
    if (comment) continue;
    if (c == '#') {
      comment = true;
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
      continue;
    } else {
      current += c;
      continue;
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string game_to_text(const GameSpec& game) {
  std::string out;
  if (const auto* m = std::get_if<MatrixGame>(&game)) {
    out += "matrix\n";
    out += fmt::format("{} {}\n", m->rows(), m->cols());
    for (std::size_t i = 0; i < m->rows(); ++i) {
      append_row(out, &m->entries()[i * m->cols()], m->cols());
    }
    return out;
  }
  const auto& g = std::get<NormalFormGame>(game);
  out += "nfg\n";
  out += fmt::format("{}\n", g.num_players());
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    if (i > 0) out += ' ';
    out += fmt::format("{}", g.dims()[i]);
  }
  out += '\n';
  const std::size_t last = g.dims().back();
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    out += fmt::format("# player {}\n", i);
    const Vec& p = g.payoffs(i);
    for (std::size_t k = 0; k < p.size(); k += last) append_row(out, &p[k], last);
  }
  return out;
}

GameSpec parse_game(std::string_view text) {
  TokenReader in(tokenize(text));
  const std::string kind = in.word();
  if (kind == "matrix") {
    const std::size_t rows = in.count();
    const std::size_t cols = in.count();
    Vec entries(rows * cols);
    for (double& e : entries) e = in.number();
    if (!in.done()) throw GameFormatError("trailing tokens after matrix entries");
    try {
      return MatrixGame(rows, cols, std::move(entries));
    } catch (const std::invalid_argument& e) {
      throw GameFormatError(e.what());
    }
  }
  if (kind == "nfg") {
    const std::size_t n = in.count();
    std::vector<std::size_t> dims(n);
    std::size_t profiles = 1;
    for (std::size_t& d : dims) {
      d = in.count();
      profiles *= d;
    }
    std::vector<Vec> payoffs(n, Vec(profiles));
    for (Vec& p : payoffs) {
      for (double& v : p) v = in.number();
    }
    if (!in.done()) throw GameFormatError("trailing tokens after payoffs");
    try {
      return NormalFormGame(std::move(dims), std::move(payoffs));
    } catch (const std::invalid_argument& e) {
      throw GameFormatError(e.what());
    }
  }
  throw GameFormatError("unknown game kind '" + kind + "'");
}

GameSpec load_game(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw GameFormatError("cannot open game file " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_game(buffer.str());
}

void save_game(const GameSpec& game, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << game_to_text(game);
}

std::string fingerprint(const GameSpec& game) {
  return fmt::format("{:016x}", fnv1a(game_to_text(game)));
}

}  // namespace rmplus
