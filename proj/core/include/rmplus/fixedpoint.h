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

#ifndef RMPLUS_FIXEDPOINT_H_
#define RMPLUS_FIXEDPOINT_H_

// Conceptual RM+ and extragradient RM+ over a product of chopped orthants.
//
// A lifted point z is stored flat; a BlockLayout cuts it into per-player
// (or per-infoset) blocks, each with its own mass floor. The prox step
// centred at c is T_c(v) = proj(c - eta v) blockwise onto {r >= 0,
// 1^T r >= floor}. Conceptual RM+ solves w = T_c(F(w)) by fixed-point
// iteration from w = c; extragradient RM+ stops after one iteration.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "rmplus/games.h"
#include "rmplus/types.h"

namespace rmplus {

struct BlockLayout {
  std::vector<std::size_t> offsets;  // num_blocks + 1 entries, offsets[0] = 0
  Vec floors;                        // one per block

  static BlockLayout uniform(std::span<const std::size_t> dims, double floor = 1.0);

  std::size_t num_blocks() const { return floors.size(); }
  std::size_t size() const { return offsets.empty() ? 0 : offsets.back(); }
  std::size_t block_size(std::size_t b) const { return offsets[b + 1] - offsets[b]; }
  std::span<const double> block(std::span<const double> z, std::size_t b) const {
    return z.subspan(offsets[b], block_size(b));
  }
};

struct GameOperator {
  BlockLayout layout;
  std::function<Vec(std::span<const double>)> evaluate;  // z -> F(z)
  double lipschitz = 0.0;                                // L_F
};

// L_F: sqrt(6) ||A||_op max(d1, d2) for matrix games, otherwise
// max_i d_i * sqrt(2 B_u^2 + 4 L_u^2).
double lipschitz_bound(const GameSpec& game);

GameOperator make_game_operator(const GameSpec& game);

// F(z) = (f(g(z_1), l_1), ..., f(g(z_n), l_n)) with l = G(g(z)).
// Throws std::invalid_argument when z is outside the chopped orthants.
Vec operator_F(std::span<const double> z, const GameSpec& game);

bool in_lifted_set(std::span<const double> z, const BlockLayout& layout,
                   double slack = 1e-12);
Vec project_lifted(std::span<const double> y, const BlockLayout& layout);

// T_center(v) = project_lifted(center - eta v).
Vec prox_step(std::span<const double> center, std::span<const double> v,
              double eta, const BlockLayout& layout);

// Blockwise g.
std::vector<Strategy> lifted_strategies(std::span<const double> z,
                                        const BlockLayout& layout);

// Each block (1/d_b) 1, projected onto its chopped orthant.
Vec initial_lifted(const BlockLayout& layout);

struct FixedPointReport {
  long iterations = 0;   // k: w^k is the returned point
  double residual = 0.0; // ||w^k - T(w^k)||_2
  bool converged = false;
  Vec residual_history;  // ||w^j - T(w^j)||_2 for j = 0..(last computed)
};

struct FixedPointResult {
  Vec point;  // w^k
  Vec next;   // T(w^k), the conceptual state advance
  FixedPointReport report;
};

// Iterates w^{j+1} = T_{z_prev}(F(w^j)) from w^0 = z_prev until the residual
// drops to eps_target or k_max iterations have been made. Without
// convergence the iterate with the smallest residual is returned.
FixedPointResult solve_fixed_point(std::span<const double> z_prev,
                                   const GameOperator& op, double eta,
                                   double eps_target, long k_max);

struct LiftedRound {
  Vec z_next;
  Vec w;                             // the point that was played
  std::vector<Strategy> strategies;  // g(w) blockwise
  FixedPointReport report;
};

LiftedRound conceptual_round(std::span<const double> z_prev,
                             const GameOperator& op, double eta,
                             double eps_target, long k_max);

// Exactly conceptual_round with one inner iteration.
LiftedRound exrm_round(std::span<const double> z_prev, const GameOperator& op,
                       double eta);

LiftedRound conceptual_round(std::span<const double> z_prev,
                             const GameSpec& game, double eta,
                             double eps_target, long k_max);
LiftedRound exrm_round(std::span<const double> z_prev, const GameSpec& game,
                       double eta);

}  // namespace rmplus

#endif  // RMPLUS_FIXEDPOINT_H_
