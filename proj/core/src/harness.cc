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

#include "rmplus/harness.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "rmplus/fixedpoint.h"
#include "rmplus/efg_io.h"
#include "rmplus/game_io.h"

namespace rmplus {

// ---------------------------------------------------------------- config

namespace {

constexpr std::pair<Algorithm, std::string_view> kAlgorithms[] = {
    {Algorithm::kRmPlus, "rm+"},
    {Algorithm::kPrmPlus, "prm+"},
    {Algorithm::kStablePrmPlus, "stable-prm+"},
    {Algorithm::kSmoothPrmPlus, "smooth-prm+"},
    {Algorithm::kConceptualRmPlus, "conceptual-rm+"},
    {Algorithm::kExRmPlus, "exrm+"},
    {Algorithm::kPredictiveCfr, "predictive-cfr"},
    {Algorithm::kClairvoyantCfr, "clairvoyant-cfr"},
};

constexpr long kFullTraceLimit = 1'000'000;

std::string number(double v) { return fmt::format("{:.17g}", v); }

bool alternation_default(Algorithm a) {
  switch (a) {
    case Algorithm::kRmPlus:
    case Algorithm::kPrmPlus:
    case Algorithm::kStablePrmPlus:
    case Algorithm::kSmoothPrmPlus:
    case Algorithm::kPredictiveCfr:
      return true;
    default:
      return false;
  }
}

bool supports_alternation(Algorithm a) { return alternation_default(a); }

void validate_common(const SolverConfig& c) {
  if (c.iterations < 1) throw ConfigError("iterations must be >= 1");
  if (c.report_skip < 0 || c.report_skip >= c.iterations) {
    throw ConfigError("report skip must lie in [0, iterations)");
  }
  if (c.eta && !(*c.eta > 0.0 && std::isfinite(*c.eta))) {
    throw ConfigError("eta must be positive and finite");
  }
  if (c.k_max < 1) throw ConfigError("kmax must be >= 1");
  if (c.alternation.value_or(false) && !supports_alternation(c.algorithm)) {
    throw ConfigError(fmt::format("{} does not support alternation",
                                  algorithm_name(c.algorithm)));
  }
  if (c.r0) {
    const bool uses_r0 = c.algorithm == Algorithm::kRmPlus ||
                         c.algorithm == Algorithm::kPrmPlus ||
                         c.algorithm == Algorithm::kStablePrmPlus;
    if (!uses_r0) {
      throw ConfigError(fmt::format("--r0 does not apply to {}", algorithm_name(c.algorithm)));
    }
    if (!std::isfinite(*c.r0) || *c.r0 < 0.0) throw ConfigError("r0 must be finite and >= 0");
    if (c.algorithm == Algorithm::kStablePrmPlus && *c.r0 <= 0.0) {
      throw ConfigError("stable-prm+ needs r0 > 0");
    }
  }
}

double auto_eta(const SolverConfig& c, std::span<const std::size_t> dims,
                double lipschitz) {
  switch (c.algorithm) {
    case Algorithm::kStablePrmPlus: {
      double d = 0.0;
      for (std::size_t di : dims) d += static_cast<double>(di);
      return std::pow(d * d * static_cast<double>(c.iterations), -0.25);
    }
    case Algorithm::kSmoothPrmPlus: {
      double worst = 0.0;
      for (std::size_t di : dims) worst = std::max(worst, std::pow(static_cast<double>(di), 1.5));
      const double n = static_cast<double>(dims.size());
      // One player has no opponents; fall back to n - 1 = 1.
      return 1.0 / (2.0 * std::sqrt(2.0) * std::max(n - 1.0, 1.0) * worst);
    }
    case Algorithm::kExRmPlus:
      return lipschitz > 0.0 ? 1.0 / (std::sqrt(2.0) * lipschitz) : 0.1;
    case Algorithm::kConceptualRmPlus:
      return lipschitz > 0.0 ? 1.0 / (2.0 * lipschitz) : 0.1;
    default:
      return 0.1;
  }
}

ResolvedConfig resolve_with(const SolverConfig& c, std::span<const std::size_t> dims,
                            double lipschitz) {
  ResolvedConfig r;
  r.eta_auto = !c.eta.has_value();
  r.eta = c.eta ? *c.eta : auto_eta(c, dims, lipschitz);
  r.r0 = c.r0 ? *c.r0 : (c.algorithm == Algorithm::kStablePrmPlus ? 1.0 : 0.0);
  r.alternation = c.alternation.value_or(alternation_default(c.algorithm));
  return r;
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  for (const auto& [a, name] : kAlgorithms) {
    if (a == algorithm) return name;
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& [a, n] : kAlgorithms) {
    if (n == name) return a;
  }
  return std::nullopt;
}

bool is_tree_algorithm(Algorithm algorithm) {
  return algorithm == Algorithm::kPredictiveCfr || algorithm == Algorithm::kClairvoyantCfr;
}

EpsSchedule EpsSchedule::parse(std::string_view text) {
  if (text == "inv-t2") return {Kind::kInverseSquare, 0.0};
  if (text == "exact") return {Kind::kConstant, 1e-14};
  if (text.starts_with("const:")) {
    const std::string rest(text.substr(6));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size() || !(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError("bad eps schedule '" + std::string(text) + "'");
    }
    return {Kind::kConstant, v};
  }
  throw ConfigError("unknown eps schedule '" + std::string(text) +
                    "' (expected inv-t2, exact or const:<v>)");
}

double EpsSchedule::at(long t) const {
  if (kind == Kind::kConstant) return value;
  const double tt = static_cast<double>(t);
  return 1.0 / (tt * tt);
}

std::string EpsSchedule::to_string() const {
  if (kind == Kind::kInverseSquare) return "inv-t2";
  return "const:" + number(value);
}

ResolvedConfig resolve(const SolverConfig& config, const GameSpec& game) {
  validate_common(config);
  if (is_tree_algorithm(config.algorithm)) {
    throw ConfigError(fmt::format("{} needs an extensive-form game",
                                  algorithm_name(config.algorithm)));
  }
  const auto dims = action_dims(game);
  const bool needs_lf = !config.eta && (config.algorithm == Algorithm::kExRmPlus ||
                                        config.algorithm == Algorithm::kConceptualRmPlus);
  return resolve_with(config, dims, needs_lf ? lipschitz_bound(game) : 0.0);
}

ResolvedConfig resolve(const SolverConfig& config, const GameTree& tree) {
  validate_common(config);
  if (!is_tree_algorithm(config.algorithm)) {
    throw ConfigError(fmt::format("{} does not run on extensive-form games",
                                  algorithm_name(config.algorithm)));
  }
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < tree.num_players(); ++i) dims.push_back(1);
  return resolve_with(config, dims, 0.0);
}

bool keep_row(long t, long total) {
  if (total <= kFullTraceLimit || t <= 1000) return true;
  const long stride = (t + 999) / 1000;
  return t % stride == 0;
}

// ----------------------------------------------------------------- trace

std::string RunTrace::header_value(std::string_view key) const {
  for (const auto& [k, v] : header) {
    if (k == key) return v;
  }
  return {};
}

std::vector<TraceRow> RunTrace::player_rows(std::size_t player) const {
  std::vector<TraceRow> out;
  for (const TraceRow& r : rows) {
    if (r.player == player) out.push_back(r);
  }
  return out;
}

Strategy linear_average(std::span<const Strategy> iterates, long T) {
  if (iterates.empty()) throw std::invalid_argument("linear_average: no iterates");
  if (T < 1 || static_cast<std::size_t>(T) > iterates.size()) {
    throw std::invalid_argument("linear_average: T must lie in [1, #iterates]");
  }
  const std::size_t d = iterates.front().size();
  Vec sum(d, 0.0);
  for (long t = 1; t <= T; ++t) {
    const Strategy& x = iterates[static_cast<std::size_t>(t - 1)];
    if (x.size() != d) throw std::invalid_argument("linear_average: dimension mismatch");
    for (std::size_t a = 0; a < d; ++a) sum[a] += static_cast<double>(t) * x[a];
  }
  double total = 0.0;
  for (double v : sum) total += v;
  for (double& v : sum) v /= total;
  return Strategy(std::move(sum));
}

double rate_estimate(std::span<const std::pair<long, double>> series, long t_lo,
                     long t_hi, std::size_t max_points) {
  if (t_lo < 1 || t_hi <= t_lo) throw std::invalid_argument("rate_estimate: bad window");
  if (max_points < 2) throw std::invalid_argument("rate_estimate: need >= 2 points");
  std::vector<std::pair<long, double>> window;
  for (const auto& p : series) {
    if (p.first >= t_lo && p.first <= t_hi) window.push_back(p);
  }
  std::sort(window.begin(), window.end());
  if (window.size() < 2) throw std::invalid_argument("rate_estimate: window has < 2 rows");

  std::vector<std::size_t> picks;
  const double ratio = static_cast<double>(t_hi) / static_cast<double>(t_lo);
  for (std::size_t k = 0; k < max_points; ++k) {
    const double target = static_cast<double>(t_lo) *
                          std::pow(ratio, static_cast<double>(k) /
                                              static_cast<double>(max_points - 1));
    auto it = std::lower_bound(window.begin(), window.end(), target,
                               [](const std::pair<long, double>& p, double v) {
                                 return static_cast<double>(p.first) < v;
                               });
    std::size_t idx = static_cast<std::size_t>(it - window.begin());
    if (idx == window.size()) {
      idx = window.size() - 1;
    } else if (idx > 0 && target - static_cast<double>(window[idx - 1].first) <
                              static_cast<double>(window[idx].first) - target) {
      --idx;
    }
    if (picks.empty() || picks.back() != idx) picks.push_back(idx);
  }
  if (picks.size() < 2) throw std::invalid_argument("rate_estimate: window too narrow");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t idx : picks) {
    const auto& [t, v] = window[idx];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(fmt::format("rate_estimate: non-positive value at t={}", t));
    }
    const double x = std::log10(static_cast<double>(t));
    const double y = std::log10(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(picks.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double rate_estimate(const RunTrace& trace, long t_lo, long t_hi) {
  std::vector<std::pair<long, double>> series;
  for (const TraceRow& r : trace.rows) {
    if (r.player == 0) series.emplace_back(r.t, r.gap);
  }
  return rate_estimate(series, t_lo, t_hi);
}

// ---------------------------------------------------------- normal form

namespace {

struct RoundOutput {
  std::vector<Strategy> played;
  std::vector<LossVector> losses;
  std::vector<Vec> lifted;
  std::vector<bool> restarted;
  long fp_k = 0;
  double fp_residual = 0.0;
};

using Engine = std::function<RoundOutput(long)>;

Strategy strategy_of(const AggregateState& s, bool predictive) {
  return predictive ? prm_plus_strategy(s) : rm_plus_strategy(s);
}

Engine regret_matching_engine(const GameSpec& game, const ResolvedConfig& rc,
                              bool predictive) {
  const auto dims = action_dims(game);
  std::vector<AggregateState> states;
  for (std::size_t d : dims) states.push_back(AggregateState::initial(d, rc.r0));
  return [=, &game](long) mutable {
    RoundOutput out;
    const std::size_t n = states.size();
    out.restarted.assign(n, false);
    std::vector<Strategy> cur;
    for (const auto& s : states) cur.push_back(strategy_of(s, predictive));
    const std::vector<LossVector> simultaneous =
        rc.alternation ? std::vector<LossVector>{} : game_losses(game, cur);
    for (std::size_t i = 0; i < n; ++i) {
      LossVector loss = rc.alternation ? player_loss(game, i, cur) : simultaneous[i];
      StepResult step = predictive ? prm_plus_step(states[i], loss)
                                   : rm_plus_step(states[i], loss);
      out.played.push_back(std::move(step.played));
      out.lifted.push_back(std::move(step.lifted));
      out.losses.push_back(std::move(loss));
      states[i] = std::move(step.state);
      if (rc.alternation) cur[i] = strategy_of(states[i], predictive);
    }
    return out;
  };
}

Engine stabilized_engine(const GameSpec& game, const ResolvedConfig& rc, bool smooth,
                         std::vector<RestartEvent>* restarts) {
  const auto dims = action_dims(game);
  JointLiftedState state = smooth ? smooth_prmp_init(dims) : stable_prmp_init(dims, rc.r0);
  return [=, &game](long t) mutable {
    RoundOutput out;
    if (!rc.alternation) {
      RoundResult r = smooth ? smooth_prmp_round(state, game, rc.eta)
                             : stable_prmp_round(state, game, rc.eta, rc.r0);
      for (std::size_t k = state.restart_events.size(); k < r.state.restart_events.size(); ++k) {
        restarts->push_back(r.state.restart_events[k]);
      }
      out.played = std::move(r.strategies);
      out.losses = std::move(r.losses);
      out.lifted = std::move(r.play_points);
      out.restarted = std::move(r.restarted);
      state = std::move(r.state);
      state.restart_events.clear();
      return out;
    }
    auto play = [&](const PlayerLifted& p) {
      return smooth ? smooth_play_point(p, rc.eta) : stable_play_point(p, rc.eta);
    };
    const std::size_t n = state.players.size();
    std::vector<Strategy> cur;
    for (const auto& p : state.players) {
      Vec z = play(p);
      cur.push_back(normalize(z));
      out.lifted.push_back(std::move(z));
    }
    out.restarted.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      LossVector loss = player_loss(game, i, cur);
      const Vec f = regret_loss(cur[i], loss);
      out.played.push_back(cur[i]);
      out.losses.push_back(std::move(loss));
      if (smooth) {
        state.players[i] = smooth_update(state.players[i], f, rc.eta);
      } else {
        PlayerStep s = stable_update(state.players[i], f, rc.eta, rc.r0);
        state.players[i] = std::move(s.next);
        if (s.restarted) {
          out.restarted[i] = true;
          restarts->push_back({t, i});
        }
      }
      cur[i] = normalize(play(state.players[i]));
    }
    state.iteration = t;
    return out;
  };
}

Engine lifted_engine(const GameSpec& game, const ResolvedConfig& rc,
                     const SolverConfig& config, Vec* initial) {
  GameOperator op = make_game_operator(game);
  Vec z = initial_lifted(op.layout);
  *initial = z;
  const bool conceptual = config.algorithm == Algorithm::kConceptualRmPlus;
  const EpsSchedule eps = config.eps;
  const long k_max = config.k_max;
  return [=, &game](long t) mutable {
    LiftedRound r = conceptual ? conceptual_round(z, op, rc.eta, eps.at(t), k_max)
                               : exrm_round(z, op, rc.eta);
    RoundOutput out;
    out.losses = game_losses(game, r.strategies);
    for (std::size_t b = 0; b < op.layout.num_blocks(); ++b) {
      const auto blk = op.layout.block(r.w, b);
      out.lifted.emplace_back(blk.begin(), blk.end());
    }
    out.played = std::move(r.strategies);
    out.restarted.assign(out.played.size(), false);
    out.fp_k = r.report.iterations;
    out.fp_residual = r.report.residual;
    z = std::move(r.z_next);
    return out;
  };
}

void require_finite_round(const RoundOutput& r, long t) {
  for (const auto& x : r.played) {
    if (!all_finite(x.probs())) throw NumericalError("non-finite strategy", t);
  }
  for (const auto& l : r.losses) {
    if (!all_finite(l.values)) throw NumericalError("non-finite loss", t);
  }
  for (const auto& v : r.lifted) {
    if (!all_finite(v)) throw NumericalError("non-finite lifted point", t);
  }
}

Strategy normalized_average(const Vec& sum) {
  double total = 0.0;
  for (double v : sum) total += v;
  Vec p(sum.size());
  for (std::size_t a = 0; a < sum.size(); ++a) p[a] = sum[a] / total;
  return Strategy(std::move(p));
}

void common_header(RunTrace& trace, const SolverConfig& c, const ResolvedConfig& rc) {
  auto& h = trace.header;
  h.emplace_back("format", "rmplus-trace-1");
  h.emplace_back("algo", std::string(algorithm_name(c.algorithm)));
  h.emplace_back("eta", number(rc.eta));
  h.emplace_back("eta_source", rc.eta_auto ? "auto" : "user");
  h.emplace_back("r0", number(rc.r0));
  h.emplace_back("avg", c.averaging == Averaging::kLinear ? "linear" : "uniform");
  h.emplace_back("alt", rc.alternation ? "1" : "0");
  h.emplace_back("iters", std::to_string(c.iterations));
  h.emplace_back("seed", std::to_string(c.seed));
  h.emplace_back("skip", std::to_string(c.report_skip));
  if (c.algorithm == Algorithm::kConceptualRmPlus) {
    h.emplace_back("eps_schedule", c.eps.to_string());
    h.emplace_back("kmax", std::to_string(c.k_max));
  }
}

// Runs `body` and converts argument errors raised mid-run into numerical
// failures: configurations are validated before the first round, so any
// later rejection comes from a non-finite iterate.
template <class Body>
void guarded_round(long t, Body body) {
  try {
    body();
  } catch (const NumericalError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw NumericalError(e.what(), t);
  }
}

}  // namespace

RunTrace run(const SolverConfig& config, const GameSpec& game) {
  const ResolvedConfig rc = resolve(config, game);
  const auto dims = action_dims(game);
  const std::size_t n = dims.size();
  const bool matrix = is_matrix_game(game);

  RunTrace trace;
  trace.num_players = n;
  trace.iterations = config.iterations;
  common_header(trace, config, rc);
  const SmoothnessConstants sc = smoothness_constants(game);
  const double lf = lipschitz_bound(game);
  trace.header.emplace_back("game", matrix ? "matrix" : "nfg");
  std::string dim_text;
  for (std::size_t i = 0; i < n; ++i) dim_text += (i ? "x" : "") + std::to_string(dims[i]);
  trace.header.emplace_back("dims", dim_text);
  trace.header.emplace_back("fingerprint", fingerprint(game));
  trace.header.emplace_back("B_u", number(sc.bounded_gradient));
  trace.header.emplace_back("L_u", number(sc.gradient_lipschitz));
  trace.header.emplace_back("L_F", number(lf));

  Engine engine;
  switch (config.algorithm) {
    case Algorithm::kRmPlus:
      engine = regret_matching_engine(game, rc, false);
      break;
    case Algorithm::kPrmPlus:
      engine = regret_matching_engine(game, rc, true);
      break;
    case Algorithm::kStablePrmPlus:
      engine = stabilized_engine(game, rc, false, &trace.restarts);
      break;
    case Algorithm::kSmoothPrmPlus:
      engine = stabilized_engine(game, rc, true, &trace.restarts);
      break;
    case Algorithm::kConceptualRmPlus:
    case Algorithm::kExRmPlus:
      engine = lifted_engine(game, rc, config, &trace.initial_lifted);
      break;
    default:
      throw ConfigError("unsupported algorithm for normal-form games");
  }

  std::vector<RegretLedger> uniform_ledgers, weighted_ledgers;
  std::vector<Vec> sums;
  for (std::size_t d : dims) {
    uniform_ledgers.emplace_back(d);
    weighted_ledgers.emplace_back(d);
    sums.emplace_back(d, 0.0);
  }
  if (config.record_iterates) trace.iterates.resize(n);
  std::vector<Strategy> previous;
  double weight_total = 0.0;
  double gap = 0.0;

  for (long t = 1; t <= config.iterations; ++t) {
    RoundOutput r;
    guarded_round(t, [&] {
      r = engine(t);
      require_finite_round(r, t);
    });
    const double w = config.averaging == Averaging::kLinear ? static_cast<double>(t) : 1.0;
    weight_total += w;
    for (std::size_t i = 0; i < n; ++i) {
      uniform_ledgers[i].record(r.played[i], r.losses[i], 1.0);
      weighted_ledgers[i].record(r.played[i], r.losses[i], w);
      for (std::size_t a = 0; a < dims[i]; ++a) sums[i][a] += w * r.played[i][a];
    }
    if (matrix) {
      gap = duality_gap(std::get<MatrixGame>(game), normalized_average(sums[0]),
                        normalized_average(sums[1]));
    } else {
      gap = 0.0;
      for (const auto& l : weighted_ledgers) gap = std::max(gap, l.max_regret());
      gap /= weight_total;
    }
    if (!std::isfinite(gap)) throw NumericalError("non-finite gap", t);

    const bool keep = t > config.report_skip && keep_row(t, config.iterations);
    for (std::size_t i = 0; i < n; ++i) {
      const double var =
          previous.empty() ? 0.0 : squared_distance(r.played[i].probs(), previous[i].probs());
      if (keep) {
        trace.rows.push_back(TraceRow{t, i, uniform_ledgers[i].max_regret(), gap, var,
                                      r.restarted[i], r.fp_k, r.fp_residual});
      }
      if (config.record_iterates) {
        trace.iterates[i].push(r.played[i], r.losses[i], r.lifted[i]);
      }
    }
    previous = std::move(r.played);
  }

  trace.final_gap = gap;
  for (std::size_t i = 0; i < n; ++i) {
    trace.final_regrets.push_back(uniform_ledgers[i].max_regret());
    trace.average.push_back(normalized_average(sums[i]));
  }
  trace.ledgers = std::move(uniform_ledgers);
  return trace;
}

// ----------------------------------------------------------------- trees

RunTrace run(const SolverConfig& config, const GameTree& tree) {
  const ResolvedConfig rc = resolve(config, tree);
  const std::size_t n = tree.num_players();

  RunTrace trace;
  trace.num_players = n;
  trace.iterations = config.iterations;
  common_header(trace, config, rc);
  trace.header.emplace_back("game", "efg");
  trace.header.emplace_back("fingerprint", fmt::format("{:016x}", fnv1a(tree_to_text(tree))));
  const BlockLayout layout = tree.layout();
  const double lf = efg_lipschitz_bound(tree, layout);
  trace.header.emplace_back("infosets", std::to_string(tree.num_infosets()));
  trace.header.emplace_back("P", std::to_string(tree.dimension()));
  trace.header.emplace_back("L_F", number(lf));
  trace.header.emplace_back("safe_eta", number(1.0 / (2.0 * lf)));

  CfrState cfr = predictive_cfr_init(tree);
  GameOperator op;
  Vec z;
  if (config.algorithm == Algorithm::kClairvoyantCfr) {
    op = make_efg_operator(tree);
    z = initial_lifted(op.layout);
    trace.initial_lifted = z;
  }

  SequenceRegretTracker uniform_tracker(tree), weighted_tracker(tree);
  SequenceAverager averager(tree);
  Vec previous;
  double weight_total = 0.0;
  double gap = 0.0;

  for (long t = 1; t <= config.iterations; ++t) {
    Vec played;
    Vec values;
    long fp_k = 0;
    double fp_residual = 0.0;
    guarded_round(t, [&] {
      if (config.algorithm == Algorithm::kPredictiveCfr) {
        if (!rc.alternation) {
          CfrRound r = predictive_cfr_round(cfr, tree);
          played = std::move(r.strategy);
          values = std::move(r.values);
          cfr = std::move(r.state);
        } else {
          played = cfr_strategy(cfr, tree);
          Vec cur = played;
          for (std::size_t i = 0; i < n; ++i) {
            cfr = cfr_update_player(cfr, tree, i, counterfactual_values(tree, cur));
            const Vec fresh = cfr_strategy(cfr, tree);
            for (std::size_t j : tree.player_infosets(i)) {
              const Infoset& info = tree.infoset(j);
              std::copy_n(fresh.begin() + static_cast<long>(info.offset), info.num_actions,
                          cur.begin() + static_cast<long>(info.offset));
            }
          }
          values = counterfactual_values(tree, played);
        }
      } else {
        LiftedRound r = clairvoyant_cfr_round(z, op, rc.eta);
        played = lifted_normalize(r.w, op.layout);
        values = counterfactual_values(tree, played);
        fp_k = r.report.iterations;
        fp_residual = r.report.residual;
        z = std::move(r.z_next);
      }
      if (!all_finite(played) || !all_finite(values)) {
        throw NumericalError("non-finite iterate", t);
      }
    });
    const double w = config.averaging == Averaging::kLinear ? static_cast<double>(t) : 1.0;
    weight_total += w;
    uniform_tracker.record(played, 1.0, values);
    weighted_tracker.record(played, w, values);
    averager.add(played, w);
    gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, weighted_tracker.regret(i));
    gap /= weight_total;

    const bool keep = t > config.report_skip && keep_row(t, config.iterations);
    for (std::size_t i = 0; i < n; ++i) {
      double var = 0.0;
      if (!previous.empty()) {
        for (std::size_t j : tree.player_infosets(i)) {
          const Infoset& info = tree.infoset(j);
          for (std::size_t a = 0; a < info.num_actions; ++a) {
            const double d = played[info.offset + a] - previous[info.offset + a];
            var += d * d;
          }
        }
      }
      if (keep) {
        trace.rows.push_back(TraceRow{t, i, uniform_tracker.regret(i), gap, var, false,
                                      fp_k, fp_residual});
      }
    }
    previous = std::move(played);
  }

  trace.final_gap = gap;
  for (std::size_t i = 0; i < n; ++i) trace.final_regrets.push_back(uniform_tracker.regret(i));
  trace.average_behavioral = averager.average();
  const Exploitability ex = exploitability(tree, trace.average_behavioral);
  trace.header.emplace_back("final_exploitability", number(ex.max()));
  return trace;
}

}  // namespace rmplus
