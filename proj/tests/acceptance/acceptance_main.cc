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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fail. `--only=N[,M...]` restricts the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "generators.h"
#include "oracles.h"
#include "rmplus/core_regret.h"
#include "rmplus/efg.h"
#include "rmplus/fixedpoint.h"
#include "rmplus/games.h"
#include "rmplus/harness.h"
#include "rmplus/projection.h"

using namespace rmplus;
using rmplus::testing::Gen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double median(Vec v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Per-player squared distance from the initial lifted block to the vertex
// of the ex-post best pure action.
double vertex_distance(const Vec& z0, const BlockLayout& layout, std::size_t b,
                       std::size_t action) {
  const auto blk = layout.block(z0, b);
  double s = 0.0;
  for (std::size_t a = 0; a < blk.size(); ++a) {
    const double e = blk[a] - (a == action ? 1.0 : 0.0);
    s += e * e;
  }
  return s;
}

std::size_t best_action(const RegretLedger& ledger) {
  const Vec& c = ledger.cumulative();
  return static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
}

// The shared suite of small random games: 2-3 players, d_i <= 4.
std::vector<GameSpec> small_suite(std::size_t count, std::uint64_t seed) {
  Gen gen(seed);
  std::vector<GameSpec> games;
  for (std::size_t k = 0; k < count; ++k) games.push_back(rmplus::testing::random_small_game(gen));
  return games;
}

// ---------------------------------------------------------------- 1

Outcome exact_instability() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0.0;
  for (auto v : {InstabilityVariant::kRmPlus, InstabilityVariant::kPrmPlus}) {
    for (bool scaled : {false, true}) {
      const auto rows = exact_instability_replay(40, v, scaled);
      ok &= rows.size() == 40;
      for (const auto& row : rows) {
        const bool odd = row.t % 2 == 1;
        ok &= row.x[0] == (odd ? Rational(1, 2) : Rational(0));
        ok &= row.x[1] == (odd ? Rational(1, 2) : Rational(1));
      }
      const InstabilityReplay fl = replay_instability(instability_losses(40, v, scaled));
      for (std::size_t t = 0; t < fl.strategies.size(); ++t) {
        const double x0 = t % 2 == 0 ? 0.5 : 0.0;
        worst = std::max({worst, std::abs(fl.strategies[t][0] - x0),
                          std::abs(fl.strategies[t][1] - (1.0 - x0))});
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {ok && worst <= 1e-12 && elapsed < 1.0,
          fmt::format("rational exact={}, float max dev={:.2e} (<= 1e-12), {:.3f} s (< 1 s)",
                      ok ? "yes" : "no", worst, elapsed)};
}

// ---------------------------------------------------------------- 2

Outcome slow_rate() {
  const GameSpec game = hard_instance();
  SolverConfig rm;
  rm.algorithm = Algorithm::kRmPlus;
  rm.iterations = 1'000'000;
  rm.alternation = true;
  rm.averaging = Averaging::kLinear;
  SolverConfig prm = rm;
  prm.algorithm = Algorithm::kPrmPlus;
  prm.alternation = false;
  const double s_rm = rate_estimate(run(rm, game), 100'000, 1'000'000);
  const double s_prm = rate_estimate(run(prm, game), 100'000, 1'000'000);
  auto in = [](double s) { return s >= -0.60 && s <= -0.40; };
  return {in(s_rm) && in(s_prm),
          fmt::format("slopes over [1e5,1e6]: rm+ alt {:.3f}, prm+ {:.3f} (in [-0.60,-0.40])",
                      s_rm, s_prm)};
}

// ---------------------------------------------------------------- 3

Outcome fast_rate() {
  const GameSpec game = hard_instance();
  bool ok = true;
  std::string detail;
  for (Algorithm a : {Algorithm::kExRmPlus, Algorithm::kStablePrmPlus,
                      Algorithm::kSmoothPrmPlus}) {
    SolverConfig c;
    c.algorithm = a;
    c.iterations = 100'000;
    c.eta = 0.1;
    c.averaging = Averaging::kLinear;
    if (a != Algorithm::kExRmPlus) c.alternation = true;
    const RunTrace t = run(c, game);
    const double slope = rate_estimate(t, 10'000, 100'000);
    ok &= t.final_gap <= 1e-6 && slope <= -1.5;
    detail += fmt::format("{}{} gap {:.2e} slope {:.2f}", detail.empty() ? "" : "; ",
                          algorithm_name(a), t.final_gap, slope);
  }
  return {ok, detail + " (gap <= 1e-6, slope <= -1.5)"};
}

// ---------------------------------------------------------------- 4

Outcome random_ordering() {
  Vec rm, ex, stable, stable_unit, smooth;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GameSpec game = random_matrix_game(30, 40, seed);
    auto final_gap = [&](Algorithm a, std::optional<double> r0) {
      SolverConfig c;
      c.algorithm = a;
      c.iterations = 10'000;
      c.eta = 0.1;
      c.r0 = r0;
      c.seed = seed;
      return run(c, game).final_gap;
    };
    rm.push_back(final_gap(Algorithm::kRmPlus, std::nullopt));
    ex.push_back(final_gap(Algorithm::kExRmPlus, std::nullopt));
    stable.push_back(final_gap(Algorithm::kStablePrmPlus, 1.0 / 30.0));
    stable_unit.push_back(final_gap(Algorithm::kStablePrmPlus, 1.0));
    smooth.push_back(final_gap(Algorithm::kSmoothPrmPlus, std::nullopt));
  }
  const double m_rm = median(rm), m_ex = median(ex), m_st = median(stable),
               m_sm = median(smooth);
  return {m_ex < m_rm && m_st < m_rm && m_sm < m_rm,
          fmt::format("median gaps: rm+ {:.2e}, exrm+ {:.2e}, stable(R0=1/30) {:.2e}, "
                      "smooth {:.2e} (all < rm+); stable(R0=1) {:.2e} for reference",
                      m_rm, m_ex, m_st, m_sm, median(stable_unit))};
}

// ---------------------------------------------------------------- 5, 6

Outcome conceptual_certificate(const std::vector<GameSpec>& suite) {
  double worst_slack = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const GameSpec& g : suite) {
    SolverConfig c;
    c.algorithm = Algorithm::kConceptualRmPlus;
    c.iterations = 1000;
    c.eps = EpsSchedule::parse("exact");
    const RunTrace t = run(c, g);
    const double eta = std::stod(t.header_value("eta"));
    ok &= std::abs(eta - 1.0 / (2.0 * lipschitz_bound(g))) <= 1e-15 * eta;
    const BlockLayout layout = BlockLayout::uniform(action_dims(g));
    for (std::size_t i = 0; i < t.num_players; ++i) {
      const std::size_t a = best_action(t.ledgers[i]);
      const double bound = vertex_distance(t.initial_lifted, layout, i, a) / (2.0 * eta);
      const double slack = bound + 1e-9 - t.ledgers[i].max_regret();
      worst_slack = std::min(worst_slack, slack);
      ok &= slack >= 0.0;
    }
  }
  return {ok, fmt::format("{} games, T=1e3, min(bound + 1e-9 - regret) = {:.3e} (>= 0)",
                          suite.size(), worst_slack)};
}

Outcome extragradient_certificate(const std::vector<GameSpec>& suite) {
  double worst_slack = std::numeric_limits<double>::infinity();
  bool ok = true;
  std::size_t checkpoints = 0;
  for (const GameSpec& g : suite) {
    SolverConfig c;
    c.algorithm = Algorithm::kExRmPlus;
    c.iterations = 1000;
    const RunTrace t = run(c, g);
    const double eta = std::stod(t.header_value("eta"));
    ok &= std::abs(eta - 1.0 / (std::sqrt(2.0) * lipschitz_bound(g))) <= 1e-15 * eta;
    const BlockLayout layout = BlockLayout::uniform(action_dims(g));
    // z0 is uniform per block, so every vertex is equally far from it.
    double bound = 0.0;
    for (std::size_t i = 0; i < t.num_players; ++i) {
      bound += vertex_distance(t.initial_lifted, layout, i, 0) / (2.0 * eta);
    }
    for (std::size_t k = 0; k < t.rows.size(); k += t.num_players) {
      double social = 0.0;
      for (std::size_t i = 0; i < t.num_players; ++i) social += t.rows[k + i].regret_max;
      const double slack = bound + 1e-9 - social;
      worst_slack = std::min(worst_slack, slack);
      ok &= slack >= 0.0;
      ++checkpoints;
    }
  }
  return {ok, fmt::format("{} games, {} checkpoints, min(bound + 1e-9 - social regret) = "
                          "{:.3e} (>= 0)",
                          suite.size(), checkpoints, worst_slack)};
}

// ---------------------------------------------------------------- 7

Outcome inexact_schedule(const std::vector<GameSpec>& suite) {
  bool ok = true;
  double worst_b = -std::numeric_limits<double>::infinity();
  double worst_slack = std::numeric_limits<double>::infinity();
  long k_violations = 0;
  const long T = 1000;
  const double contraction = 0.5;  // eta * L_F
  const double b_max = 2.0 / std::log(1.0 / contraction) + 0.25;
  for (const GameSpec& g : suite) {
    const GameOperator op = make_game_operator(g);
    const double eta = 1.0 / (2.0 * op.lipschitz);
    const double bu = smoothness_constants(g).bounded_gradient;
    Vec z = initial_lifted(op.layout);
    const Vec z0 = z;
    std::vector<RegretLedger> ledgers;
    for (std::size_t b = 0; b < op.layout.num_blocks(); ++b) {
      ledgers.emplace_back(op.layout.block_size(b));
    }
    double eps_sum = 0.0;
    // OLS of k on ln t.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (long t = 1; t <= T; ++t) {
      const double eps = 1.0 / static_cast<double>(t * t);
      const LiftedRound r = conceptual_round(z, op, eta, eps, 10'000);
      ok &= r.report.converged;
      eps_sum += eps;
      const double res0 = r.report.residual_history.front();
      const double cap =
          res0 <= eps ? 1.0
                      : std::ceil(std::log(res0 / eps) / std::log(1.0 / contraction)) + 1.0;
      if (static_cast<double>(r.report.iterations) > cap) ++k_violations;
      const double lt = std::log(static_cast<double>(t));
      const double k = static_cast<double>(r.report.iterations);
      sx += lt;
      sy += k;
      sxx += lt * lt;
      sxy += lt * k;
      const auto losses = game_losses(g, r.strategies);
      for (std::size_t i = 0; i < ledgers.size(); ++i) ledgers[i].record(r.strategies[i], losses[i]);
      z = r.z_next;
    }
    const double n = static_cast<double>(T);
    const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    worst_b = std::max(worst_b, b);
    for (std::size_t i = 0; i < ledgers.size(); ++i) {
      const std::size_t a = best_action(ledgers[i]);
      const double bound = vertex_distance(z0, op.layout, i, a) / (2.0 * eta) +
                           2.0 * bu * std::sqrt(static_cast<double>(op.layout.block_size(i))) *
                               eps_sum;
      worst_slack = std::min(worst_slack, bound + 1e-9 - ledgers[i].max_regret());
    }
  }
  ok &= k_violations == 0 && worst_b <= b_max && worst_slack >= 0.0;
  return {ok, fmt::format("{} games, T=1e3: k-cap violations {}, max fitted b {:.3f} "
                          "(<= {:.3f}), min regret slack {:.3e} (>= 0)",
                          suite.size(), k_violations, worst_b, b_max, worst_slack)};
}

// ---------------------------------------------------------------- 8

Outcome lipschitz_suites() {
  Gen gen(808);
  long normalize_bad = 0, nfg_bad = 0, matrix_bad = 0, h_bad = 0, g_bad = 0, efg_bad = 0;
  for (int k = 0; k < 10000; ++k) {
    const std::size_t d = gen.index(2, 10);
    const Vec x = gen.chopped(d), y = gen.nonneg(d);
    if (l2_distance(normalize(y).probs(), normalize(x).probs()) >
        std::sqrt(static_cast<double>(d)) * l2_distance(y, x) + 1e-9) {
      ++normalize_bad;
    }
  }
  auto operator_pairs = [&](const GameSpec& g, long& bad) {
    const GameOperator op = make_game_operator(g);
    for (int p = 0; p < 1000; ++p) {
      const Vec z = gen.lifted(op.layout), w = gen.lifted(op.layout);
      if (l2_distance(op.evaluate(z), op.evaluate(w)) > op.lipschitz * l2_distance(z, w) + 1e-9) {
        ++bad;
      }
    }
  };
  for (int k = 0; k < 10; ++k) {
    std::vector<std::size_t> dims;
    const std::size_t n = gen.index(2, 4);
    for (std::size_t i = 0; i < n; ++i) dims.push_back(gen.index(2, 4));
    operator_pairs(random_normal_form_game(dims, gen.bits()), nfg_bad);
    operator_pairs(random_matrix_game(gen.index(2, 6), gen.index(2, 6), gen.bits()), matrix_bad);
  }
  const std::vector<GameTree> trees{build_kuhn(2, 3), build_liars_dice(2, 2),
                                    build_matrix_tree(random_matrix_game(3, 3, 4))};
  for (const GameTree& tree : trees) {
    const double lh = std::sqrt(2.0 * static_cast<double>(tree.dimension()));
    for (int p = 0; p < 1000; ++p) {
      const Vec x = gen.behavioral(tree), y = gen.behavioral(tree);
      if (l2_distance(counterfactual_regret_operator(tree, x),
                      counterfactual_regret_operator(tree, y)) > lh * l2_distance(x, y) + 1e-9) {
        ++h_bad;
      }
    }
    const BlockLayout layout = tree.layout();
    const double lg = lifted_normalize_lipschitz(layout);
    for (int p = 0; p < 1000; ++p) {
      const Vec z = gen.lifted(layout), w = gen.lifted(layout);
      if (l2_distance(lifted_normalize(z, layout), lifted_normalize(w, layout)) >
          lg * l2_distance(z, w) + 1e-9) {
        ++g_bad;
      }
    }
    const GameOperator op = make_efg_operator(tree);
    for (int p = 0; p < 1000; ++p) {
      const Vec z = gen.lifted(op.layout), w = gen.lifted(op.layout);
      if (l2_distance(op.evaluate(z), op.evaluate(w)) > op.lipschitz * l2_distance(z, w) + 1e-9) {
        ++efg_bad;
      }
    }
  }
  const long total = normalize_bad + nfg_bad + matrix_bad + h_bad + g_bad + efg_bad;
  return {total == 0,
          fmt::format("violations: normalization {}/1e4, nfg operator {}/1e4, matrix operator "
                      "{}/1e4, tree regret operator {}/3e3, block normalization {}/3e3, tree operator "
                      "{}/3e3",
                      normalize_bad, nfg_bad, matrix_bad, h_bad, g_bad, efg_bad)};
}

// ---------------------------------------------------------------- 9

Outcome projection_oracle() {
  Gen gen(909);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const std::size_t d = gen.index(2, 6);
    const Vec y = gen.vec(d, -2, 2);
    worst = std::max(worst, rmplus::testing::max_abs_diff(project_chopped(y),
                                                          oracle::chopped_projection_qp(y)));
  }
  return {worst <= 1e-9, fmt::format("1e4 inputs, d in [2,6], max deviation {:.2e} (<= 1e-9)",
                                     worst)};
}

// ---------------------------------------------------------------- 10

Outcome regret_equivalence(const std::vector<GameSpec>& suite) {
  Gen gen(1010);
  double worst_ratio = 0.0;
  std::size_t traces = 0;
  const long T = 1000;
  for (const GameSpec& g : suite) {
    for (Algorithm a : {Algorithm::kRmPlus, Algorithm::kPrmPlus, Algorithm::kStablePrmPlus,
                        Algorithm::kSmoothPrmPlus, Algorithm::kConceptualRmPlus,
                        Algorithm::kExRmPlus}) {
      SolverConfig c;
      c.algorithm = a;
      c.iterations = T;
      c.record_iterates = true;
      const RunTrace t = run(c, g);
      for (const IterateTrace& tr : t.iterates) {
        ++traces;
        const std::size_t d = tr.strategies.front().size();
        std::vector<Strategy> comparators;
        for (std::size_t act = 0; act < d; ++act) comparators.push_back(Strategy::pure(d, act));
        for (int k = 0; k < 3; ++k) comparators.push_back(gen.strategy(d));
        for (const Strategy& cmp : comparators) {
          const auto [s, l] = lifted_regret_equivalence(tr, cmp);
          worst_ratio = std::max(worst_ratio, std::abs(s - l) / (1e-9 * static_cast<double>(T)));
        }
      }
    }
  }
  return {worst_ratio <= 1.0,
          fmt::format("{} traces (T=1e3), max |strategy - lifted| / (1e-9 T) = {:.3e} (<= 1)",
                      traces, worst_ratio)};
}

// ---------------------------------------------------------------- 11

Outcome tree_sanity() {
  const GameTree kuhn = build_kuhn(2, 3);
  SolverConfig c;
  c.algorithm = Algorithm::kPredictiveCfr;
  c.iterations = 10'000;
  const RunTrace pcfr = run(c, kuhn);
  const double expl = std::stod(pcfr.header_value("final_exploitability"));

  // Decomposition at checkpoints, simultaneous predictive CFR with linear weights.
  SequenceRegretTracker tracker(kuhn);
  CfrState s = predictive_cfr_init(kuhn);
  long decomposition_bad = 0, checkpoints = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (long t = 1; t <= 10'000; ++t) {
    const CfrRound r = predictive_cfr_round(s, kuhn);
    tracker.record(r.strategy, static_cast<double>(t), r.values);
    s = r.state;
    if (t % 100 == 0) {
      ++checkpoints;
      for (std::size_t p = 0; p < 2; ++p) {
        // Linear weights make the bound tight; compare per unit weight.
        const double excess =
            (tracker.regret(p) - tracker.cfr_bound(p)) / tracker.total_weight();
        worst_excess = std::max(worst_excess, excess);
        if (excess > 1e-9) ++decomposition_bad;
      }
    }
  }

  bool series_ok = true;
  std::string series;
  for (double eta : {1.0, 10.0, 20.0}) {
    SolverConfig cc;
    cc.algorithm = Algorithm::kClairvoyantCfr;
    cc.iterations = 1000;
    cc.eta = eta;
    const RunTrace t = run(cc, kuhn);
    double running = std::numeric_limits<double>::infinity(), first = 0.0;
    bool valid = true;
    for (const TraceRow& row : t.player_rows(0)) {
      valid &= std::isfinite(row.gap) && row.gap >= 0.0;
      const double next = std::min(running, row.gap);
      valid &= next <= running;
      if (row.t == 1) first = row.gap;
      running = next;
    }
    series_ok &= valid;
    series += fmt::format("{}eta={} {:.2e}->{:.2e}", series.empty() ? "" : ", ", eta, first,
                          running);
  }
  return {expl <= 1e-3 && decomposition_bad == 0 && series_ok,
          fmt::format("predictive cfr exploitability {:.2e} at 1e4 (<= 1e-3); decomposition "
                      "violations {}/{} (max excess per unit weight {:.1e}, <= 1e-9); clairvoyant running-min gap {} ({})",
                      expl, decomposition_bad, checkpoints * 2, worst_excess, series,
                      series_ok ? "valid" : "invalid")};
}

// ---------------------------------------------------------------- 12

Outcome stabilized_certificates() {
  const std::vector<GameSpec> games = small_suite(8, 1212);
  bool ok = true;
  double worst_ratio = 0.0;
  const long T_stable = 10'000;
  for (const GameSpec& g : games) {
    SolverConfig c;
    c.algorithm = Algorithm::kStablePrmPlus;
    c.iterations = T_stable;
    c.alternation = false;
    const RunTrace t = run(c, g);
    double d = 0.0;
    for (std::size_t di : action_dims(g)) d += static_cast<double>(di);
    const double cap = 200.0 * std::pow(d, 1.5) * std::pow(static_cast<double>(T_stable), 0.25);
    ok &= std::abs(std::stod(t.header_value("eta")) -
                   std::pow(d * d * static_cast<double>(T_stable), -0.25)) <= 1e-15;
    for (double r : t.final_regrets) worst_ratio = std::max(worst_ratio, r / cap);
  }
  ok &= worst_ratio <= 1.0;

  // Smooth: social regret against its certificate, and no upward trend.
  const long T_smooth = 100'000;
  double worst_slack = std::numeric_limits<double>::infinity();
  double worst_growth = -std::numeric_limits<double>::infinity();
  Gen gen(1213);
  for (int k = 0; k < 5; ++k) {
    std::vector<std::size_t> dims;
    const std::size_t n = gen.index(2, 3);
    for (std::size_t i = 0; i < n; ++i) dims.push_back(gen.index(2, 4));
    const GameSpec g = random_normal_form_game(dims, gen.bits() % 1000000);
    SolverConfig c;
    c.algorithm = Algorithm::kSmoothPrmPlus;
    c.iterations = T_smooth;
    c.alternation = false;
    const RunTrace t = run(c, g);
    const double eta = std::stod(t.header_value("eta"));
    double bound = 0.0;
    for (std::size_t di : dims) bound += (1.0 - 1.0 / static_cast<double>(di)) / (2.0 * eta);
    double first_half = -std::numeric_limits<double>::infinity();
    double second_half = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows.size(); r += n) {
      double social = 0.0;
      for (std::size_t i = 0; i < n; ++i) social += t.rows[r + i].regret_max;
      worst_slack = std::min(worst_slack, bound + 1e-9 - social);
      (t.rows[r].t <= T_smooth / 2 ? first_half : second_half) =
          std::max(t.rows[r].t <= T_smooth / 2 ? first_half : second_half, social);
    }
    worst_growth = std::max(worst_growth, second_half - first_half);
  }
  ok &= worst_slack >= 0.0 && worst_growth <= 1e-9;
  return {ok, fmt::format("stable: max regret / (200 d^1.5 T^0.25) = {:.3e} (<= 1) at T=1e4; "
                          "smooth: min(bound - social regret) = {:.3e} (>= 0), max growth of "
                          "peak social regret between halves of T=1e5 = {:.3e} (<= 0)",
                          worst_ratio, worst_slack, worst_growth)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--only=", 0) == 0) {
      std::stringstream in(arg.substr(7));
      std::string item;
      while (std::getline(in, item, ',')) only.insert(std::stoi(item));
    } else {
      std::fprintf(stderr, "usage: %s [--only=N[,M...]]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<GameSpec> suite = small_suite(20, 55);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact instability replay", exact_instability},
      {"slow rate of rm+ and prm+", slow_rate},
      {"fast rate of stabilized and extragradient variants", fast_rate},
      {"random 30x40 game ordering", random_ordering},
      {"conceptual rm+ individual regret certificate", [&] { return conceptual_certificate(suite); }},
      {"extragradient social regret certificate", [&] { return extragradient_certificate(suite); }},
      {"inexact fixed-point schedule", [&] { return inexact_schedule(suite); }},
      {"lipschitz suites", lipschitz_suites},
      {"projection oracle equivalence", projection_oracle},
      {"strategy and lifted regret equality", [&] { return regret_equivalence(suite); }},
      {"extensive-form sanity", tree_sanity},
      {"stabilized finite-horizon certificates", stabilized_certificates},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id,
                criteria[k].first.c_str(), o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
