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

#ifndef RMPLUS_HARNESS_H_
#define RMPLUS_HARNESS_H_

// Solver drivers, trace recording and rate regression.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rmplus/core_regret.h"
#include "rmplus/efg.h"
#include "rmplus/games.h"
#include "rmplus/stabilized.h"

namespace rmplus {

enum class Algorithm {
  kRmPlus,
  kPrmPlus,
  kStablePrmPlus,
  kSmoothPrmPlus,
  kConceptualRmPlus,
  kExRmPlus,
  kPredictiveCfr,
  kClairvoyantCfr,
};

std::string_view algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);
bool is_tree_algorithm(Algorithm algorithm);

enum class Averaging { kUniform, kLinear };

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inner-loop tolerance per round for conceptual RM+.
//   inv-t2     eps(t) = 1 / t^2
//   const:<v>  eps(t) = v
//   exact      eps(t) = 1e-14 (fixed points to rounding level)
struct EpsSchedule {
  enum class Kind { kInverseSquare, kConstant };
  Kind kind = Kind::kInverseSquare;
  double value = 0.0;

  static EpsSchedule parse(std::string_view text);  // throws ConfigError
  double at(long t) const;
  std::string to_string() const;
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::kRmPlus;
  std::optional<double> eta;  // empty: resolve automatically
  std::optional<double> r0;
  Averaging averaging = Averaging::kLinear;
  std::optional<bool> alternation;  // empty: the algorithm's default
  long iterations = 1000;
  EpsSchedule eps;
  long k_max = 1000;
  std::uint64_t seed = 0;
  long report_skip = 0;
  bool record_iterates = false;
};

// Values actually used by a run.
struct ResolvedConfig {
  double eta = 0.1;
  bool eta_auto = false;
  double r0 = 0.0;
  bool alternation = false;
};

ResolvedConfig resolve(const SolverConfig& config, const GameSpec& game);
ResolvedConfig resolve(const SolverConfig& config, const GameTree& tree);

struct TraceRow {
  long t = 0;
  std::size_t player = 0;
  double regret_max = 0.0;  // uniform-weight max-action (or sequence) regret
  double gap = 0.0;         // of the averaged strategies
  double iter_var = 0.0;    // ||x^t - x^{t-1}||^2, 0 at t = 1
  bool restart = false;
  long fp_k = 0;
  double fp_residual = 0.0;
};

struct RunTrace {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<TraceRow> rows;
  std::size_t num_players = 0;
  long iterations = 0;

  // Final state of the run.
  double final_gap = 0.0;
  Vec final_regrets;                      // uniform weights, per player
  std::vector<Strategy> average;          // per player (normal form)
  Vec average_behavioral;                 // sequence-form average (trees)
  std::vector<RegretLedger> ledgers;      // uniform weights (normal form)
  std::vector<RestartEvent> restarts;
  std::vector<IterateTrace> iterates;     // when record_iterates
  Vec initial_lifted;                     // z^0 for lifted methods

  std::string header_value(std::string_view key) const;
  // Rows of one player, in t order.
  std::vector<TraceRow> player_rows(std::size_t player) const;
};

// Deterministic given (config, game). Throws ConfigError for invalid
// configurations and NumericalError when an iterate becomes non-finite.
RunTrace run(const SolverConfig& config, const GameSpec& game);
RunTrace run(const SolverConfig& config, const GameTree& tree);

// Whether a row for iteration t is kept in a run of `total` iterations.
bool keep_row(long t, long total);

// sum_t t x^t / (T(T+1)/2) over the first T iterates.
Strategy linear_average(std::span<const Strategy> iterates, long T);

// OLS slope of log10(value) on log10(t) over [t_lo, t_hi], sampled on a
// geometric grid of at most `max_points` points (nearest stored t).
double rate_estimate(std::span<const std::pair<long, double>> series, long t_lo,
                     long t_hi, std::size_t max_points = 500);
// Uses the gap column of player 0's rows.
double rate_estimate(const RunTrace& trace, long t_lo, long t_hi);

// CSV: `# key=value` header lines, the column header, then one line per row
// with 17 significant digits.
void write_csv(const RunTrace& trace, std::ostream& out);
std::string to_csv(const RunTrace& trace);

struct CsvTrace {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<TraceRow> rows;
};
CsvTrace read_csv(std::istream& in);  // throws std::invalid_argument

}  // namespace rmplus

#endif  // RMPLUS_HARNESS_H_
