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

#include "rmplus/fixedpoint.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rmplus/core_regret.h"
#include "rmplus/projection.h"

namespace rmplus {

BlockLayout BlockLayout::uniform(std::span<const std::size_t> dims, double floor) {
  BlockLayout layout;
  layout.offsets.push_back(0);
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("BlockLayout: empty block");
    layout.offsets.push_back(layout.offsets.back() + d);
    layout.floors.push_back(floor);
  }
  return layout;
}

double lipschitz_bound(const GameSpec& game) {
  if (const auto* m = std::get_if<MatrixGame>(&game)) {
    return std::sqrt(6.0) * spectral_norm(*m) *
           static_cast<double>(std::max(m->rows(), m->cols()));
  }
  const auto c = smoothness_constants(game);
  const auto dims = action_dims(game);
  const double dmax = static_cast<double>(*std::max_element(dims.begin(), dims.end()));
  return dmax * std::sqrt(2.0 * c.bounded_gradient * c.bounded_gradient +
                          4.0 * c.gradient_lipschitz * c.gradient_lipschitz);
}

bool in_lifted_set(std::span<const double> z, const BlockLayout& layout,
                   double slack) {
  if (z.size() != layout.size()) return false;
  for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
    if (!in_chopped_orthant(layout.block(z, b), layout.floors[b], slack)) {
      return false;
    }
  }
  return true;
}

Vec project_lifted(std::span<const double> y, const BlockLayout& layout) {
  if (y.size() != layout.size()) {
    throw std::invalid_argument("project_lifted: dimension mismatch");
  }
  Vec out(y.size());
  for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
    const Vec p = project_chopped(layout.block(y, b), layout.floors[b]);
    std::copy(p.begin(), p.end(), out.begin() + static_cast<long>(layout.offsets[b]));
  }
  return out;
}

Vec prox_step(std::span<const double> center, std::span<const double> v,
              double eta, const BlockLayout& layout) {
  if (center.size() != layout.size() || v.size() != layout.size()) {
    throw std::invalid_argument("prox_step: dimension mismatch");
  }
  Vec y(center.begin(), center.end());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] -= eta * v[k];
  return project_lifted(y, layout);
}

std::vector<Strategy> lifted_strategies(std::span<const double> z,
                                        const BlockLayout& layout) {
  if (z.size() != layout.size()) {
    throw std::invalid_argument("lifted_strategies: dimension mismatch");
  }
  std::vector<Strategy> out;
  out.reserve(layout.num_blocks());
  for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
    out.push_back(normalize(layout.block(z, b)));
  }
  return out;
}

Vec initial_lifted(const BlockLayout& layout) {
  Vec z(layout.size());
  for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
    const std::size_t d = layout.block_size(b);
    const Vec p = project_chopped(Vec(d, 1.0 / static_cast<double>(d)),
                                  layout.floors[b]);
    std::copy(p.begin(), p.end(), z.begin() + static_cast<long>(layout.offsets[b]));
  }
  return z;
}

namespace {

Vec evaluate_game(std::span<const double> z, const GameSpec& game,
                  const BlockLayout& layout) {
  const std::vector<Strategy> x = lifted_strategies(z, layout);
  const std::vector<LossVector> losses = game_losses(game, x);
  Vec out(layout.size());
  for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
    const Vec f = regret_loss(x[b], losses[b]);
    std::copy(f.begin(), f.end(), out.begin() + static_cast<long>(layout.offsets[b]));
  }
  return out;
}

void check_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("step size eta must be positive and finite");
  }
}

}  // namespace

GameOperator make_game_operator(const GameSpec& game) {
  const auto dims = action_dims(game);
  GameOperator op;
  op.layout = BlockLayout::uniform(dims);
  op.lipschitz = lipschitz_bound(game);
  op.evaluate = [game, layout = op.layout](std::span<const double> z) {
    return evaluate_game(z, game, layout);
  };
  return op;
}

Vec operator_F(std::span<const double> z, const GameSpec& game) {
  const auto dims = action_dims(game);
  const BlockLayout layout = BlockLayout::uniform(dims);
  if (z.size() != layout.size()) {
    throw std::invalid_argument("operator_F: dimension mismatch");
  }
  if (!in_lifted_set(z, layout)) {
    throw std::invalid_argument("operator_F: point outside the chopped orthants");
  }
  return evaluate_game(z, game, layout);
}

FixedPointResult solve_fixed_point(std::span<const double> z_prev,
                                   const GameOperator& op, double eta,
                                   double eps_target, long k_max) {
  check_eta(eta);
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (!(eps_target >= 0.0)) throw std::invalid_argument("eps_target must be >= 0");
  if (!in_lifted_set(z_prev, op.layout)) {
    throw std::invalid_argument("fixed point: z_prev outside the lifted set");
  }
  auto T = [&](const Vec& w) { return prox_step(z_prev, op.evaluate(w), eta, op.layout); };

  FixedPointResult best;
  double best_residual = std::numeric_limits<double>::infinity();
  Vec w(z_prev.begin(), z_prev.end());
  Vec tw = T(w);
  FixedPointReport report;
  report.residual_history.push_back(l2_distance(w, tw));
  for (long k = 1; k <= k_max; ++k) {
    w = std::move(tw);
    tw = T(w);
    const double r = l2_distance(w, tw);
    report.residual_history.push_back(r);
    if (!std::isfinite(r)) break;
    if (r < best_residual || r <= eps_target) {
      best_residual = r;
      best.point = w;
      best.next = tw;
      report.iterations = k;
      report.residual = r;
    }
    if (r <= eps_target) {
      report.converged = true;
      break;
    }
  }
  if (best.point.empty()) {
    // Only reachable when the very first residual is not finite.
    best.point = w;
    best.next = tw;
    report.iterations = 1;
    report.residual = l2_distance(w, tw);
  }
  best.report = std::move(report);
  return best;
}

LiftedRound conceptual_round(std::span<const double> z_prev,
                             const GameOperator& op, double eta,
                             double eps_target, long k_max) {
  FixedPointResult fp = solve_fixed_point(z_prev, op, eta, eps_target, k_max);
  LiftedRound out;
  out.strategies = lifted_strategies(fp.point, op.layout);
  out.z_next = std::move(fp.next);
  out.w = std::move(fp.point);
  out.report = std::move(fp.report);
  return out;
}

LiftedRound exrm_round(std::span<const double> z_prev, const GameOperator& op,
                       double eta) {
  return conceptual_round(z_prev, op, eta,
                          std::numeric_limits<double>::infinity(), 1);
}

LiftedRound conceptual_round(std::span<const double> z_prev,
                             const GameSpec& game, double eta,
                             double eps_target, long k_max) {
  return conceptual_round(z_prev, make_game_operator(game), eta, eps_target, k_max);
}

LiftedRound exrm_round(std::span<const double> z_prev, const GameSpec& game,
                       double eta) {
  return exrm_round(z_prev, make_game_operator(game), eta);
}

}  // namespace rmplus
