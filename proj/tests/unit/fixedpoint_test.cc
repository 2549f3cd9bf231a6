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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "generators.h"
#include "oracles.h"
#include "rmplus/fixedpoint.h"

using namespace rmplus;
using rmplus::testing::max_abs_diff;

namespace {

// Regret of each player against its best pure action after running
// `rounds` lifted rounds, plus ||z0_b - e_best||^2 for that action.
struct Certificate {
  Vec regret;
  Vec distance;
  Vec eps_sum;  // sum of residuals actually reached
};

template <class Round>
Certificate run_lifted(const GameSpec& game, const GameOperator& op, long rounds,
                       Round round) {
  Vec z = initial_lifted(op.layout);
  const Vec z0 = z;
  std::vector<RegretLedger> ledgers;
  for (std::size_t b = 0; b < op.layout.num_blocks(); ++b) {
    ledgers.emplace_back(op.layout.block_size(b));
  }
  Certificate c;
  for (long t = 1; t <= rounds; ++t) {
    LiftedRound r = round(z, t);
    const auto losses = game_losses(game, r.strategies);
    for (std::size_t b = 0; b < ledgers.size(); ++b) ledgers[b].record(r.strategies[b], losses[b]);
    z = r.z_next;
  }
  for (std::size_t b = 0; b < ledgers.size(); ++b) {
    const Vec& cum = ledgers[b].cumulative();
    const auto best = static_cast<std::size_t>(
        std::max_element(cum.begin(), cum.end()) - cum.begin());
    const auto blk = op.layout.block(z0, b);
    double dist = 0.0;
    for (std::size_t a = 0; a < blk.size(); ++a) {
      const double e = blk[a] - (a == best ? 1.0 : 0.0);
      dist += e * e;
    }
    c.regret.push_back(cum[best]);
    c.distance.push_back(dist);
  }
  return c;
}

}  // namespace

TEST_SUITE("fixedpoint") {

TEST_CASE("block layout") {
  const BlockLayout l = BlockLayout::uniform(std::vector<std::size_t>{2, 3}, 1.0);
  CHECK(l.offsets == std::vector<std::size_t>{0, 2, 5});
  CHECK(l.size() == 5);
  CHECK(l.num_blocks() == 2);
  const Vec z{1, 2, 3, 4, 5};
  CHECK(l.block(z, 1)[0] == 3);
  CHECK(max_abs_diff(initial_lifted(l), Vec{0.5, 0.5, 1.0 / 3, 1.0 / 3, 1.0 / 3}) < 1e-15);
  CHECK(in_lifted_set(initial_lifted(l), l));
  CHECK_FALSE(in_lifted_set(Vec{0.1, 0.1, 1, 1, 1}, l));
  CHECK_THROWS_AS(BlockLayout::uniform(std::vector<std::size_t>{2, 0}), std::invalid_argument);
}

TEST_CASE("operator F") {
  SUBCASE("zero game") {
    const GameSpec zero = MatrixGame(2, 3, Vec(6, 0.0));
    rmplus::testing::Gen gen(1);
    const BlockLayout l = BlockLayout::uniform(std::vector<std::size_t>{2, 3});
    for (int k = 0; k < 10; ++k) {
      CHECK(max_abs_diff(operator_F(gen.lifted(l), zero), Vec(5, 0.0)) == 0.0);
    }
  }
  SUBCASE("uniform blocks compose the gradient oracle with f") {
    const MatrixGame a = random_matrix_game(3, 2, 4);
    const Vec z{1, 1, 1, 2, 2};
    const Vec F = operator_F(z, a);
    const Strategy x = Strategy::uniform(3), y = Strategy::uniform(2);
    const auto [lx, ly] = matrix_gradients(a, x, y);
    Vec expect = regret_loss(x, lx);
    const Vec fy = regret_loss(y, ly);
    expect.insert(expect.end(), fy.begin(), fy.end());
    CHECK(max_abs_diff(F, expect) < 1e-15);
  }
  SUBCASE("scale invariance") {
    const GameSpec g = random_normal_form_game({2, 3, 2}, 9);
    rmplus::testing::Gen gen(2);
    const BlockLayout l = BlockLayout::uniform(std::vector<std::size_t>{2, 3, 2});
    for (int k = 0; k < 20; ++k) {
      const Vec z = gen.lifted(l);
      Vec scaled = z;
      const double c = gen.uniform(1.0, 10.0);
      for (double& v : scaled) v *= c;
      CHECK(max_abs_diff(operator_F(z, g), operator_F(scaled, g)) < 1e-12);
    }
  }
  SUBCASE("rejects points outside the lifted set") {
    const GameSpec g = hard_instance();
    CHECK_THROWS_AS(operator_F(Vec{0.1, 0.1, 0.1, 1, 1, 1}, g), std::invalid_argument);
    CHECK_THROWS_AS(operator_F(Vec{1, 1, 1}, g), std::invalid_argument);
  }
}

TEST_CASE("fixed-point solver") {
  SUBCASE("zero game converges immediately") {
    const GameOperator op = make_game_operator(MatrixGame(2, 2, Vec(4, 0.0)));
    const Vec z{0.7, 0.6, 1, 3};
    const FixedPointResult r = solve_fixed_point(z, op, 0.1, 1e-12, 10);
    CHECK(r.point == z);
    CHECK(r.next == z);
    CHECK(r.report.iterations == 1);
    CHECK(r.report.residual == 0.0);
    CHECK(r.report.converged);
  }
  SUBCASE("contraction at eta = 1/(2 L_F)") {
    rmplus::testing::Gen gen(3);
    for (int k = 0; k < 20; ++k) {
      const GameSpec g = rmplus::testing::random_small_game(gen);
      const GameOperator op = make_game_operator(g);
      const double eta = 1.0 / (2.0 * op.lipschitz);
      const Vec z = gen.lifted(op.layout);
      const FixedPointResult r = solve_fixed_point(z, op, eta, 0.0, 40);
      const Vec& h = r.report.residual_history;
      for (std::size_t j = 1; j < h.size(); ++j) {
        if (h[j - 1] > 1e-13) CHECK(h[j] <= (0.5 + 1e-9) * h[j - 1] + 1e-15);
      }
      // The reported residual is reproducible from the returned point.
      const Vec tw = prox_step(z, op.evaluate(r.point), eta, op.layout);
      CHECK(std::abs(l2_distance(r.point, tw) - r.report.residual) <= 1e-12);
      CHECK(max_abs_diff(tw, r.next) == 0.0);
    }
  }
  SUBCASE("iteration count follows the geometric bound") {
    rmplus::testing::Gen gen(4);
    for (int k = 0; k < 20; ++k) {
      const GameSpec g = rmplus::testing::random_small_game(gen);
      const GameOperator op = make_game_operator(g);
      const double eta = 1.0 / (2.0 * op.lipschitz);
      const Vec z = gen.lifted(op.layout);
      for (long t : {1L, 10L, 100L, 1000L}) {
        const double eps = 1.0 / static_cast<double>(t * t);
        const FixedPointResult r = solve_fixed_point(z, op, eta, eps, 1000);
        REQUIRE(r.report.converged);
        const double r0 = r.report.residual_history.front();
        const double bound =
            r0 <= eps ? 1.0 : std::ceil(std::log(r0 / eps) / std::log(2.0)) + 1.0;
        CHECK(static_cast<double>(r.report.iterations) <= bound);
      }
    }
  }
  SUBCASE("reports non-convergence with a large step") {
    const GameOperator op = make_game_operator(random_matrix_game(4, 4, 2));
    const Vec z = initial_lifted(op.layout);
    const FixedPointResult r = solve_fixed_point(z, op, 50.0 / op.lipschitz, 0.0, 5);
    CHECK_FALSE(r.report.converged);
    CHECK(r.report.iterations >= 1);
    CHECK(r.report.iterations <= 5);
    const Vec& h = r.report.residual_history;
    CHECK(r.report.residual == *std::min_element(h.begin() + 1, h.end()));
  }
  SUBCASE("argument checks") {
    const GameOperator op = make_game_operator(hard_instance());
    const Vec z = initial_lifted(op.layout);
    CHECK_THROWS_AS(solve_fixed_point(z, op, 0.0, 1e-6, 10), std::invalid_argument);
    CHECK_THROWS_AS(solve_fixed_point(z, op, 0.1, -1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(solve_fixed_point(z, op, 0.1, 1e-6, 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_fixed_point(Vec(6, 0.1), op, 0.1, 1e-6, 10), std::invalid_argument);
  }
}

TEST_CASE("extragradient round") {
  SUBCASE("equals one inner iteration of the conceptual round") {
    rmplus::testing::Gen gen(5);
    for (int k = 0; k < 20; ++k) {
      const GameSpec g = rmplus::testing::random_small_game(gen);
      const GameOperator op = make_game_operator(g);
      const Vec z = gen.lifted(op.layout);
      const double eta = gen.uniform(0.01, 2.0);
      const LiftedRound a = exrm_round(z, op, eta);
      const LiftedRound b =
          conceptual_round(z, op, eta, std::numeric_limits<double>::infinity(), 1);
      CHECK(a.w == b.w);
      CHECK(a.z_next == b.z_next);
      CHECK(a.report.iterations == 1);
    }
  }
  SUBCASE("matches the straight-line oracle on matrix games") {
    const MatrixGame g = random_matrix_game(3, 4, 6);
    const GameOperator op = make_game_operator(g);
    Vec z = initial_lifted(op.layout), zr = z;
    for (int t = 0; t < 100; ++t) {
      const LiftedRound r = exrm_round(z, op, 0.2);
      const auto ref = oracle::extragradient_matrix(g, zr, 0.2);
      REQUIRE(max_abs_diff(r.w, ref.w) <= 1e-10);
      REQUIRE(max_abs_diff(r.z_next, ref.z_next) <= 1e-10);
      CHECK(in_lifted_set(r.w, op.layout));
      CHECK(in_lifted_set(r.z_next, op.layout));
      z = r.z_next;
      zr = ref.z_next;
    }
  }
  SUBCASE("zero game stays put") {
    const GameSpec zero = MatrixGame(2, 2, Vec(4, 0.0));
    const Vec z{0.3, 0.9, 2, 2};
    const LiftedRound r = exrm_round(z, zero, 0.5);
    CHECK(r.w == z);
    CHECK(r.z_next == z);
    const LiftedRound c = conceptual_round(z, zero, 0.5, 1e-12, 10);
    CHECK(c.z_next == z);
    CHECK(max_abs_diff(c.strategies[0].probs(), Vec{0.25, 0.75}) < 1e-15);
  }
}

TEST_CASE("conceptual regret certificates on a random 3x3 game") {
  const MatrixGame g = random_matrix_game(3, 3, 31);
  const GameOperator op = make_game_operator(g);
  const double eta = 1.0 / (2.0 * op.lipschitz);
  SUBCASE("converged fixed points") {
    const Certificate c = run_lifted(g, op, 500, [&](const Vec& z, long) {
      return conceptual_round(z, op, eta, 1e-14, 1000);
    });
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(c.regret[i] <= c.distance[i] / (2.0 * eta) + 1e-9);
    }
  }
  SUBCASE("inverse-square tolerance schedule") {
    const double bu = smoothness_constants(g).bounded_gradient;
    double eps_total = 0.0;
    const Certificate c = run_lifted(g, op, 500, [&](const Vec& z, long t) {
      const double eps = 1.0 / static_cast<double>(t * t);
      eps_total += eps;
      return conceptual_round(z, op, eta, eps, 1000);
    });
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(c.regret[i] <= c.distance[i] / (2.0 * eta) +
                               2.0 * bu * std::sqrt(3.0) * eps_total + 1e-9);
    }
  }
}

TEST_CASE("extragradient social regret certificate") {
  const MatrixGame g = random_matrix_game(4, 3, 8);
  const GameOperator op = make_game_operator(g);
  const double eta = 1.0 / (std::sqrt(2.0) * op.lipschitz);
  for (long T : {10L, 100L, 1000L}) {
    const Certificate c =
        run_lifted(g, op, T, [&](const Vec& z, long) { return exrm_round(z, op, eta); });
    CHECK(c.regret[0] + c.regret[1] <= (c.distance[0] + c.distance[1]) / (2.0 * eta) + 1e-9);
  }
}

}  // TEST_SUITE
