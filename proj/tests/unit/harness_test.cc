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

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "generators.h"
#include "oracles.h"
#include "rmplus/harness.h"

using namespace rmplus;
using rmplus::testing::max_abs_diff;

namespace {

SolverConfig config(Algorithm a, long iterations) {
  SolverConfig c;
  c.algorithm = a;
  c.iterations = iterations;
  return c;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a : {Algorithm::kRmPlus, Algorithm::kPrmPlus, Algorithm::kStablePrmPlus,
                      Algorithm::kSmoothPrmPlus, Algorithm::kConceptualRmPlus,
                      Algorithm::kExRmPlus, Algorithm::kPredictiveCfr,
                      Algorithm::kClairvoyantCfr}) {
    CHECK(parse_algorithm(algorithm_name(a)) == a);
  }
  CHECK_FALSE(parse_algorithm("cfr+").has_value());
}

TEST_CASE("eps schedules") {
  CHECK(EpsSchedule::parse("inv-t2").at(10) == doctest::Approx(0.01));
  CHECK(EpsSchedule::parse("const:0.5").at(7) == 0.5);
  CHECK(EpsSchedule::parse("exact").at(3) == 1e-14);
  CHECK_THROWS_AS(EpsSchedule::parse("const:abc"), ConfigError);
  CHECK_THROWS_AS(EpsSchedule::parse("const:-1"), ConfigError);
  CHECK_THROWS_AS(EpsSchedule::parse("fast"), ConfigError);
}

TEST_CASE("rm+ without alternation matches the reference loop") {
  const MatrixGame a = hard_instance();
  SolverConfig c = config(Algorithm::kRmPlus, 10);
  c.alternation = false;
  c.record_iterates = true;
  const RunTrace trace = run(c, a);
  const oracle::MatrixRun ref = oracle::rm_plus_matrix(a, 10);
  CHECK(max_abs_diff(trace.ledgers[0].cumulative(), ref.regret_x) <= 1e-12);
  CHECK(max_abs_diff(trace.ledgers[1].cumulative(), ref.regret_y) <= 1e-12);
  for (std::size_t t = 0; t < 10; ++t) {
    CHECK(max_abs_diff(trace.iterates[0].strategies[t].probs(), ref.x[t]) <= 1e-12);
    CHECK(max_abs_diff(trace.iterates[1].strategies[t].probs(), ref.y[t]) <= 1e-12);
  }
}

TEST_CASE("zero game has zero gaps") {
  const GameSpec zero = MatrixGame(3, 2, Vec(6, 0.0));
  for (Algorithm a : {Algorithm::kRmPlus, Algorithm::kPrmPlus, Algorithm::kStablePrmPlus,
                      Algorithm::kSmoothPrmPlus, Algorithm::kExRmPlus,
                      Algorithm::kConceptualRmPlus}) {
    const RunTrace trace = run(config(a, 50), zero);
    for (const TraceRow& r : trace.rows) {
      CHECK(r.gap == 0.0);
      CHECK(r.regret_max == 0.0);
    }
  }
}

TEST_CASE("runs are deterministic") {
  const GameSpec g = random_normal_form_game({2, 3, 2}, 4);
  for (Algorithm a : {Algorithm::kPrmPlus, Algorithm::kSmoothPrmPlus, Algorithm::kExRmPlus}) {
    SolverConfig c = config(a, 200);
    c.seed = 9;
    CHECK(to_csv(run(c, g)) == to_csv(run(c, g)));
  }
  const GameTree kuhn = build_kuhn(2, 3);
  const SolverConfig c = config(Algorithm::kPredictiveCfr, 30);
  CHECK(to_csv(run(c, kuhn)) == to_csv(run(c, kuhn)));
}

TEST_CASE("uniform-average gap is at most the summed regret") {
  const MatrixGame a = random_matrix_game(4, 5, 3);
  for (Algorithm alg : {Algorithm::kRmPlus, Algorithm::kPrmPlus, Algorithm::kExRmPlus}) {
    SolverConfig c = config(alg, 300);
    c.averaging = Averaging::kUniform;
    if (alg != Algorithm::kExRmPlus) c.alternation = false;
    const RunTrace trace = run(c, a);
    double total = 0.0;
    for (double r : trace.final_regrets) total += std::max(r, 0.0);
    CHECK(trace.final_gap <= total / 300.0 + 1e-12);
  }
}

TEST_CASE("linear average") {
  const std::vector<Strategy> xs{Strategy({1, 0}), Strategy({0, 1})};
  CHECK(max_abs_diff(linear_average(xs, 2).probs(), Vec{1.0 / 3, 2.0 / 3}) <= 1e-15);
  CHECK(linear_average(xs, 1).probs() == Vec{1, 0});
  CHECK_THROWS_AS(linear_average(xs, 3), std::invalid_argument);
  CHECK_THROWS_AS(linear_average(xs, 0), std::invalid_argument);
}

TEST_CASE("rate estimate") {
  std::vector<std::pair<long, double>> inv, inv2, flat;
  for (long t = 1; t <= 10000; ++t) {
    const double x = static_cast<double>(t);
    inv.emplace_back(t, 3.0 / x);
    inv2.emplace_back(t, 0.5 / (x * x));
    flat.emplace_back(t, 2.0);
  }
  CHECK(rate_estimate(inv, 10, 10000) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(rate_estimate(inv2, 10, 10000) == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(std::abs(rate_estimate(flat, 10, 10000)) <= 1e-12);
}

TEST_CASE("row thinning") {
  CHECK(keep_row(1, 5'000'000));
  CHECK(keep_row(1000, 5'000'000));
  CHECK(keep_row(777'777, 1'000'000));
  CHECK_FALSE(keep_row(1001, 5'000'000));
  CHECK(keep_row(1002, 5'000'000));
}

TEST_CASE("configuration errors") {
  const GameSpec g = hard_instance();
  SolverConfig c = config(Algorithm::kRmPlus, 0);
  CHECK_THROWS_AS(run(c, g), ConfigError);
  c = config(Algorithm::kRmPlus, 10);
  c.eta = -1.0;
  CHECK_THROWS_AS(run(c, g), ConfigError);
  c = config(Algorithm::kExRmPlus, 10);
  c.alternation = true;
  CHECK_THROWS_AS(run(c, g), ConfigError);
  c = config(Algorithm::kSmoothPrmPlus, 10);
  c.r0 = 1.0;
  CHECK_THROWS_AS(run(c, g), ConfigError);
  c = config(Algorithm::kStablePrmPlus, 10);
  c.r0 = 0.0;
  CHECK_THROWS_AS(run(c, g), ConfigError);
  c = config(Algorithm::kConceptualRmPlus, 10);
  c.k_max = 0;
  CHECK_THROWS_AS(run(c, g), ConfigError);
  c = config(Algorithm::kRmPlus, 10);
  c.report_skip = 10;
  CHECK_THROWS_AS(run(c, g), ConfigError);
  CHECK_THROWS_AS(run(config(Algorithm::kPredictiveCfr, 10), g), ConfigError);
  CHECK_THROWS_AS(run(config(Algorithm::kRmPlus, 10), build_kuhn(2, 3)), ConfigError);
}

TEST_CASE("overflowing step size is a numerical error") {
  SolverConfig c = config(Algorithm::kStablePrmPlus, 50);
  c.eta = 1e308;
  CHECK_THROWS_AS(run(c, hard_instance()), NumericalError);
}

TEST_CASE("resolved step sizes") {
  const GameSpec g = hard_instance();
  const double lf = lipschitz_bound(g);
  const ResolvedConfig ex = resolve(config(Algorithm::kExRmPlus, 100), g);
  CHECK(ex.eta_auto);
  CHECK(ex.eta == doctest::Approx(1.0 / (std::sqrt(2.0) * lf)));
  CHECK_FALSE(ex.alternation);
  CHECK(resolve(config(Algorithm::kConceptualRmPlus, 100), g).eta ==
        doctest::Approx(1.0 / (2.0 * lf)));
  CHECK(resolve(config(Algorithm::kStablePrmPlus, 10000), g).eta ==
        doctest::Approx(std::pow(36.0 * 10000.0, -0.25)));
  CHECK(resolve(config(Algorithm::kStablePrmPlus, 10), g).r0 == 1.0);
  CHECK(resolve(config(Algorithm::kSmoothPrmPlus, 10), g).eta ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(2.0) * std::pow(3.0, 1.5))));
  CHECK(resolve(config(Algorithm::kRmPlus, 10), g).alternation);
  SolverConfig user = config(Algorithm::kExRmPlus, 10);
  user.eta = 0.25;
  const ResolvedConfig u = resolve(user, g);
  CHECK(u.eta == 0.25);
  CHECK_FALSE(u.eta_auto);
  // Zero game: no Lipschitz constant to size the step from.
  CHECK(resolve(config(Algorithm::kExRmPlus, 10), MatrixGame(2, 2, Vec(4, 0.0))).eta == 0.1);
}

TEST_CASE("trace header") {
  SolverConfig c = config(Algorithm::kConceptualRmPlus, 20);
  c.eps = EpsSchedule::parse("const:0.001");
  const RunTrace t = run(c, hard_instance());
  CHECK(t.header_value("format") == "rmplus-trace-1");
  CHECK(t.header_value("algo") == "conceptual-rm+");
  CHECK(t.header_value("eta_source") == "auto");
  CHECK(t.header_value("game") == "matrix");
  CHECK(t.header_value("dims") == "3x3");
  CHECK(std::stod(t.header_value("B_u")) == doctest::Approx(std::sqrt(26.0)));
  CHECK(t.header_value("kmax") == "1000");
  CHECK_FALSE(t.header_value("eps_schedule").empty());
  CHECK(t.header_value("missing").empty());
  CHECK(t.rows.size() == 40);
  CHECK(t.player_rows(1).size() == 20);
  for (const TraceRow& r : t.rows) {
    CHECK(r.fp_k >= 1);
    CHECK(r.fp_residual <= 0.001);
  }
  CHECK(t.initial_lifted.size() == 6);

  const RunTrace tree = run(config(Algorithm::kPredictiveCfr, 20), build_kuhn(2, 3));
  CHECK(tree.header_value("game") == "efg");
  CHECK(tree.header_value("infosets") == "12");
  CHECK(tree.header_value("P") == "24");
  CHECK_FALSE(tree.header_value("final_exploitability").empty());
}

TEST_CASE("report skip drops early rows") {
  SolverConfig c = config(Algorithm::kRmPlus, 30);
  c.report_skip = 10;
  const RunTrace t = run(c, hard_instance());
  CHECK(t.rows.size() == 40);
  CHECK(t.rows.front().t == 11);
}

TEST_CASE("csv round trip") {
  const RunTrace t = run(config(Algorithm::kStablePrmPlus, 25), random_matrix_game(3, 3, 1));
  std::istringstream in(to_csv(t));
  const CsvTrace back = read_csv(in);
  CHECK(back.header == t.header);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    CHECK(back.rows[k].t == t.rows[k].t);
    CHECK(back.rows[k].player == t.rows[k].player);
    CHECK(back.rows[k].gap == t.rows[k].gap);
    CHECK(back.rows[k].regret_max == t.rows[k].regret_max);
    CHECK(back.rows[k].iter_var == t.rows[k].iter_var);
    CHECK(back.rows[k].restart == t.rows[k].restart);
  }
  std::istringstream bad("t,player\nx,y\n");
  CHECK_THROWS_AS(read_csv(bad), std::invalid_argument);
}

}  // TEST_SUITE
