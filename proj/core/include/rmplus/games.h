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

#ifndef RMPLUS_GAMES_H_
#define RMPLUS_GAMES_H_

// Normal-form game specifications and their oracles.
//
// Sign convention: solvers consume losses. In a matrix game the row player
// maximizes <x, A y>, so its loss is -A y; the column player minimizes and
// its loss is A^T x. For a general normal-form game player i's loss is the
// negative payoff gradient -grad_{x_i} u_i(x).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rmplus/core_regret.h"
#include "rmplus/types.h"

namespace rmplus {

// Dense d1 x d2 payoff matrix stored row-major.
class MatrixGame {
 public:
  MatrixGame() = default;
  MatrixGame(std::size_t rows, std::size_t cols, Vec entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const Vec& entries() const { return entries_; }

  Vec times(std::span<const double> y) const;            // A y
  Vec transpose_times(std::span<const double> x) const;  // A^T x

  friend bool operator==(const MatrixGame&, const MatrixGame&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec entries_;
};

// n-player game with one full payoff array per player. Pure profiles are
// indexed row-major: the last player's action varies fastest.
class NormalFormGame {
 public:
  NormalFormGame() = default;
  NormalFormGame(std::vector<std::size_t> dims, std::vector<Vec> payoffs);

  // Zero-sum embedding: u1 = A, u2 = -A.
  static NormalFormGame from_matrix(const MatrixGame& game);

  std::size_t num_players() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t num_profiles() const { return num_profiles_; }
  const Vec& payoffs(std::size_t player) const { return payoffs_[player]; }
  double payoff(std::size_t player, std::span<const std::size_t> profile) const;

  // grad_{x_i} u_i(x) of the multilinear extension.
  Vec payoff_gradient(std::size_t player, std::span<const Strategy> joint) const;
  double utility(std::size_t player, std::span<const Strategy> joint) const;

  // Affine rescale into [-1, 1] by the largest absolute payoff.
  NormalFormGame rescaled() const;

  friend bool operator==(const NormalFormGame&, const NormalFormGame&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Vec> payoffs_;
  std::size_t num_profiles_ = 0;
};

using GameSpec = std::variant<MatrixGame, NormalFormGame>;

std::size_t num_players(const GameSpec& game);
std::vector<std::size_t> action_dims(const GameSpec& game);
bool is_matrix_game(const GameSpec& game);

// Loss pair (-A y, A^T x) for the row maximizer / column minimizer.
std::pair<LossVector, LossVector> matrix_gradients(const MatrixGame& game,
                                                   const Strategy& x,
                                                   const Strategy& y);

// G(x) = (-grad_1 u_1(x), ..., -grad_n u_n(x)).
std::vector<LossVector> nfg_gradients(const NormalFormGame& game,
                                      std::span<const Strategy> joint);

// Dispatching forms over GameSpec.
std::vector<LossVector> game_losses(const GameSpec& game,
                                    std::span<const Strategy> joint);
LossVector player_loss(const GameSpec& game, std::size_t player,
                       std::span<const Strategy> joint);

// The 3x3 instance on which RM+ and PRM+ converge at rate T^{-1/2}.
MatrixGame hard_instance();

// I.i.d. standard normal entries drawn from Rng(seed).
MatrixGame random_matrix_game(std::size_t d1, std::size_t d2,
                              std::uint64_t seed);

// I.i.d. uniform [-1, 1] payoffs for every player, drawn from Rng(seed).
NormalFormGame random_normal_form_game(std::vector<std::size_t> dims,
                                       std::uint64_t seed);

// max_i (A y)_i - min_j (x^T A)_j.
double duality_gap(const MatrixGame& game, const Strategy& x,
                   const Strategy& y);

// max over players of (max-action regret)^+ / T.
double cce_gap(std::span<const RegretLedger> ledgers, long rounds);

// Constants B_u and L_u of the bounded-gradient / smoothness assumption.
// Matrix games: B_u = max column / row norm, L_u = ||A||_op. General games:
// B_u = largest gradient norm over pure opponent profiles, L_u bounds the
// gradient variation through per-opponent unfoldings (see games.cc).
struct SmoothnessConstants {
  double bounded_gradient = 0.0;   // B_u
  double gradient_lipschitz = 0.0; // L_u
};
SmoothnessConstants smoothness_constants(const GameSpec& game);

// Largest singular value of a row-major matrix by power iteration on A^T A
// (200 iterations or relative change < 1e-10, start vector 1/sqrt(cols)).
double spectral_norm(std::size_t rows, std::size_t cols,
                     std::span<const double> entries);
inline double spectral_norm(const MatrixGame& game) {
  return spectral_norm(game.rows(), game.cols(), game.entries());
}

// Hex FNV-1a hash of the canonical text serialization.
std::string fingerprint(const GameSpec& game);

// ---------------------------------------------------------------------------
// Adversarial loss sequences that make RM+ / PRM+ alternate between (1/2,1/2)
// and (0,1). Each loss is embedded as (value, 0).

enum class InstabilityVariant { kRmPlus, kPrmPlus };

struct LossSequence {
  std::vector<LossVector> losses;
  InstabilityVariant variant = InstabilityVariant::kRmPlus;
  bool scaled = false;
  double scale = 1.0;  // L_T when scaled, else 1
};

// First component of loss t (1-based), unscaled. Exact in double for
// t <= 2000 since every value is a power of two.
double instability_loss_value(long t, InstabilityVariant variant);

LossSequence instability_losses(long rounds, InstabilityVariant variant,
                                bool scaled);

struct InstabilityReplay {
  std::vector<Strategy> strategies;
  std::vector<Vec> aggregates;  // R^{t+1} after each round
  IterateTrace trace;
};

// Feeds the sequence through rm_plus_step / prm_plus_step from R^1 = 0.
InstabilityReplay replay_instability(const LossSequence& sequence);

using Rational = boost::multiprecision::cpp_rational;

struct ExactReplayRow {
  long t = 0;
  Rational loss;
  std::vector<Rational> x;
  std::vector<Rational> r_next;
};

// Same replay in exact rational arithmetic.
std::vector<ExactReplayRow> exact_instability_replay(long rounds,
                                                     InstabilityVariant variant,
                                                     bool scaled);

}  // namespace rmplus

#endif  // RMPLUS_GAMES_H_
