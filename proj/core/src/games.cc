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

#include "rmplus/games.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rmplus/detail/regret_kernels.h"
#include "rmplus/rng.h"

namespace rmplus {

namespace {

void check_strategy_dim(const Strategy& x, std::size_t d, const char* who) {
  if (x.size() != d) {
    throw std::invalid_argument(std::string(who) + ": strategy has dimension " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(d));
  }
}

// Advances a row-major multi-index (last coordinate fastest).
void advance(std::vector<std::size_t>& idx,
             const std::vector<std::size_t>& dims) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < dims[k]) return;
    idx[k] = 0;
  }
}

}  // namespace

// ------------------------------------------------------------ MatrixGame

MatrixGame::MatrixGame(std::size_t rows, std::size_t cols, Vec entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("MatrixGame: dimensions must be positive");
  }
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("MatrixGame: expected " +
                                std::to_string(rows_ * cols_) + " entries");
  }
  if (!all_finite(entries_)) {
    throw std::invalid_argument("MatrixGame: entries must be finite");
  }
}

Vec MatrixGame::times(std::span<const double> y) const {
  if (y.size() != cols_) throw std::invalid_argument("A y: dimension mismatch");
  Vec out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* row = &entries_[i * cols_];
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += row[j] * y[j];
    out[i] = s;
  }
  return out;
}

Vec MatrixGame::transpose_times(std::span<const double> x) const {
  if (x.size() != rows_) {
    throw std::invalid_argument("A^T x: dimension mismatch");
  }
  Vec out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* row = &entries_[i * cols_];
    const double xi = x[i];
    for (std::size_t j = 0; j < cols_; ++j) out[j] += row[j] * xi;
  }
  return out;
}

// -------------------------------------------------------- NormalFormGame

NormalFormGame::NormalFormGame(std::vector<std::size_t> dims,
                               std::vector<Vec> payoffs)
    : dims_(std::move(dims)), payoffs_(std::move(payoffs)) {
  if (dims_.empty()) throw std::invalid_argument("NormalFormGame: no players");
  num_profiles_ = 1;
  for (std::size_t d : dims_) {
    if (d == 0) {
      throw std::invalid_argument("NormalFormGame: empty action set");
    }
    num_profiles_ *= d;
  }
  if (payoffs_.size() != dims_.size()) {
    throw std::invalid_argument("NormalFormGame: one payoff array per player");
  }
  for (const Vec& p : payoffs_) {
    if (p.size() != num_profiles_) {
      throw std::invalid_argument("NormalFormGame: payoff array must have " +
                                  std::to_string(num_profiles_) + " entries");
    }
    if (!all_finite(p)) {
      throw std::invalid_argument("NormalFormGame: payoffs must be finite");
    }
  }
}

NormalFormGame NormalFormGame::from_matrix(const MatrixGame& game) {
  Vec negated(game.entries().size());
  std::transform(game.entries().begin(), game.entries().end(), negated.begin(),
                 [](double v) { return -v; });
  return NormalFormGame({game.rows(), game.cols()}, {game.entries(), negated});
}

double NormalFormGame::payoff(std::size_t player,
                              std::span<const std::size_t> profile) const {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    index = index * dims_[k] + profile[k];
  }
  return payoffs_.at(player).at(index);
}

Vec NormalFormGame::payoff_gradient(std::size_t player,
                                    std::span<const Strategy> joint) const {
  if (joint.size() != dims_.size()) {
    throw std::invalid_argument("payoff_gradient: wrong number of players");
  }
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    check_strategy_dim(joint[k], dims_[k], "payoff_gradient");
  }
  Vec grad(dims_[player], 0.0);
  std::vector<std::size_t> idx(dims_.size(), 0);
  const Vec& u = payoffs_[player];
  for (std::size_t p = 0; p < num_profiles_; ++p) {
    double weight = 1.0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (k != player) weight *= joint[k][idx[k]];
    }
    grad[idx[player]] += weight * u[p];
    advance(idx, dims_);
  }
  return grad;
}

double NormalFormGame::utility(std::size_t player,
                               std::span<const Strategy> joint) const {
  return dot(payoff_gradient(player, joint), joint[player].probs());
}

NormalFormGame NormalFormGame::rescaled() const {
  double scale = 0.0;
  for (const Vec& p : payoffs_) {
    for (double v : p) scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) return *this;
  std::vector<Vec> out = payoffs_;
  for (Vec& p : out) {
    for (double& v : p) v /= scale;
  }
  return NormalFormGame(dims_, std::move(out));
}

// -------------------------------------------------------------- GameSpec

std::size_t num_players(const GameSpec& game) {
  if (const auto* m = std::get_if<MatrixGame>(&game)) {
    (void)m;
    return 2;
  }
  return std::get<NormalFormGame>(game).num_players();
}

std::vector<std::size_t> action_dims(const GameSpec& game) {
  if (const auto* m = std::get_if<MatrixGame>(&game)) {
    return {m->rows(), m->cols()};
  }
  return std::get<NormalFormGame>(game).dims();
}

bool is_matrix_game(const GameSpec& game) {
  return std::holds_alternative<MatrixGame>(game);
}

std::pair<LossVector, LossVector> matrix_gradients(const MatrixGame& game,
                                                   const Strategy& x,
                                                   const Strategy& y) {
  check_strategy_dim(x, game.rows(), "matrix_gradients");
  check_strategy_dim(y, game.cols(), "matrix_gradients");
  Vec lx = game.times(y.probs());
  for (double& v : lx) v = -v;
  return {LossVector{std::move(lx)},
          LossVector{game.transpose_times(x.probs())}};
}

std::vector<LossVector> nfg_gradients(const NormalFormGame& game,
                                      std::span<const Strategy> joint) {
  std::vector<LossVector> out;
  out.reserve(game.num_players());
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    Vec g = game.payoff_gradient(i, joint);
    for (double& v : g) v = -v;
    out.push_back(LossVector{std::move(g)});
  }
  return out;
}

std::vector<LossVector> game_losses(const GameSpec& game,
                                    std::span<const Strategy> joint) {
  if (const auto* m = std::get_if<MatrixGame>(&game)) {
    if (joint.size() != 2) {
      throw std::invalid_argument("matrix game expects two strategies");
    }
    auto [lx, ly] = matrix_gradients(*m, joint[0], joint[1]);
    return {std::move(lx), std::move(ly)};
  }
  return nfg_gradients(std::get<NormalFormGame>(game), joint);
}

LossVector player_loss(const GameSpec& game, std::size_t player,
                       std::span<const Strategy> joint) {
  if (const auto* m = std::get_if<MatrixGame>(&game)) {
    if (joint.size() != 2) {
      throw std::invalid_argument("matrix game expects two strategies");
    }
    if (player == 0) {
      check_strategy_dim(joint[1], m->cols(), "player_loss");
      Vec l = m->times(joint[1].probs());
      for (double& v : l) v = -v;
      return LossVector{std::move(l)};
    }
    check_strategy_dim(joint[0], m->rows(), "player_loss");
    return LossVector{m->transpose_times(joint[0].probs())};
  }
  Vec g = std::get<NormalFormGame>(game).payoff_gradient(player, joint);
  for (double& v : g) v = -v;
  return LossVector{std::move(g)};
}

MatrixGame hard_instance() {
  return MatrixGame(3, 3, {3, 0, -3,  //
                           0, 3, -4,  //
                           0, 0, 1});
}

MatrixGame random_matrix_game(std::size_t d1, std::size_t d2,
                              std::uint64_t seed) {
  Rng rng(seed);
  Vec entries(d1 * d2);
  for (double& e : entries) e = rng.normal();
  return MatrixGame(d1, d2, std::move(entries));
}

NormalFormGame random_normal_form_game(std::vector<std::size_t> dims,
                                       std::uint64_t seed) {
  Rng rng(seed);
  std::size_t profiles = 1;
  for (std::size_t d : dims) profiles *= d;
  std::vector<Vec> payoffs(dims.size(), Vec(profiles));
  for (Vec& p : payoffs) {
    for (double& v : p) v = rng.uniform(-1.0, 1.0);
  }
  return NormalFormGame(std::move(dims), std::move(payoffs));
}

double duality_gap(const MatrixGame& game, const Strategy& x,
                   const Strategy& y) {
  check_strategy_dim(x, game.rows(), "duality_gap");
  check_strategy_dim(y, game.cols(), "duality_gap");
  const Vec ay = game.times(y.probs());
  const Vec xa = game.transpose_times(x.probs());
  return *std::max_element(ay.begin(), ay.end()) -
         *std::min_element(xa.begin(), xa.end());
}

double cce_gap(std::span<const RegretLedger> ledgers, long rounds) {
  if (rounds < 1) throw std::invalid_argument("cce_gap: rounds must be >= 1");
  double worst = 0.0;
  for (const RegretLedger& ledger : ledgers) {
    worst = std::max(worst, std::max(ledger.max_regret(), 0.0));
  }
  return worst / static_cast<double>(rounds);
}

// ------------------------------------------------------------ constants

double spectral_norm(std::size_t rows, std::size_t cols,
                     std::span<const double> entries) {
  if (entries.size() != rows * cols) {
    throw std::invalid_argument("spectral_norm: entry count mismatch");
  }
  // ||A||_op is at least the largest column norm; an estimate below that
  // means the start vector was orthogonal to the top singular direction.
  double max_col = 0.0;
  std::size_t best_col = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      s += entries[i * cols + j] * entries[i * cols + j];
    }
    if (s > max_col) {
      max_col = s;
      best_col = j;
    }
  }
  if (max_col == 0.0) return 0.0;

  auto iterate = [&](Vec v) {
    double lambda = 0.0;
    Vec u(rows);
    Vec w(cols);
    for (int it = 0; it < 200; ++it) {
      for (std::size_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) s += entries[i * cols + j] * v[j];
        u[i] = s;
      }
      std::fill(w.begin(), w.end(), 0.0);
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) w[j] += entries[i * cols + j] * u[i];
      }
      double next = 0.0;
      for (double e : u) next += e * e;  // Rayleigh quotient v^T A^T A v
      const double wn = l2_norm(w);
      if (wn == 0.0) return 0.0;
      for (std::size_t j = 0; j < cols; ++j) v[j] = w[j] / wn;
      const bool done = it > 0 && std::abs(next - lambda) <= 1e-10 * next;
      lambda = next;
      if (done) break;
    }
    return std::sqrt(lambda);
  };

  double sigma = iterate(Vec(cols, 1.0 / std::sqrt(static_cast<double>(cols))));
  if (sigma * sigma < max_col * (1.0 - 1e-12)) {
    Vec e(cols, 0.0);
    e[best_col] = 1.0;
    sigma = std::max(sigma, iterate(std::move(e)));
  }
  return sigma;
}

namespace {

SmoothnessConstants nfg_constants(const NormalFormGame& game) {
  const auto& dims = game.dims();
  const std::size_t n = dims.size();
  SmoothnessConstants out;
  std::vector<std::size_t> idx(n, 0);

  for (std::size_t i = 0; i < n; ++i) {
    // B_u: gradient at a pure opponent profile is the payoff column over a_i.
    std::vector<std::size_t> others_dims;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != i) others_dims.push_back(dims[k]);
    }
    std::size_t num_others = 1;
    for (std::size_t d : others_dims) num_others *= d;
    std::vector<std::size_t> oidx(others_dims.size(), 0);
    for (std::size_t o = 0; o < num_others; ++o) {
      double sq = 0.0;
      for (std::size_t a = 0; a < dims[i]; ++a) {
        std::size_t pos = 0;
        for (std::size_t k = 0; k < n; ++k) {
          idx[k] = k == i ? a : oidx[pos++];
        }
        const double v = game.payoff(i, idx);
        sq += v * v;
      }
      out.bounded_gradient = std::max(out.bounded_gradient, std::sqrt(sq));
      advance(oidx, others_dims);
    }

    // L_u: telescoping over opponents k, each term bounded by the worst
    // operator norm of the d_i x d_k slice over pure profiles of the rest.
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      std::vector<std::size_t> rest_dims;
      for (std::size_t q = 0; q < n; ++q) {
        if (q != i && q != k) rest_dims.push_back(dims[q]);
      }
      std::size_t num_rest = 1;
      for (std::size_t d : rest_dims) num_rest *= d;
      std::vector<std::size_t> ridx(rest_dims.size(), 0);
      double worst = 0.0;
      Vec slice(dims[i] * dims[k]);
      for (std::size_t r = 0; r < num_rest; ++r) {
        for (std::size_t a = 0; a < dims[i]; ++a) {
          for (std::size_t b = 0; b < dims[k]; ++b) {
            std::size_t pos = 0;
            for (std::size_t q = 0; q < n; ++q) {
              if (q == i) {
                idx[q] = a;
              } else if (q == k) {
                idx[q] = b;
              } else {
                idx[q] = ridx[pos++];
              }
            }
            slice[a * dims[k] + b] = game.payoff(i, idx);
          }
        }
        worst = std::max(worst, spectral_norm(dims[i], dims[k], slice));
        advance(ridx, rest_dims);
      }
      sum_sq += worst * worst;
    }
    out.gradient_lipschitz = std::max(out.gradient_lipschitz, std::sqrt(sum_sq));
  }
  return out;
}

}  // namespace

SmoothnessConstants smoothness_constants(const GameSpec& game) {
  if (const auto* m = std::get_if<MatrixGame>(&game)) {
    double best = 0.0;
    for (std::size_t j = 0; j < m->cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < m->rows(); ++i) s += m->at(i, j) * m->at(i, j);
      best = std::max(best, std::sqrt(s));
    }
    for (std::size_t i = 0; i < m->rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m->cols(); ++j) s += m->at(i, j) * m->at(i, j);
      best = std::max(best, std::sqrt(s));
    }
    return {best, spectral_norm(*m)};
  }
  return nfg_constants(std::get<NormalFormGame>(game));
}

// ----------------------------------------------------------- instability

double instability_loss_value(long t, InstabilityVariant variant) {
  if (t < 1) throw std::invalid_argument("instability loss index must be >= 1");
  if (variant == InstabilityVariant::kRmPlus) {
    if (t == 1) return 2.0;
    if (t % 2 == 0) return -std::ldexp(1.0, static_cast<int>((t - 2) / 2));
    return std::ldexp(1.0, static_cast<int>((t - 1) / 2));
  }
  if (t == 1) return 4.0;
  if (t % 2 == 0) return -std::ldexp(1.0, static_cast<int>((t - 2) / 2));
  return std::ldexp(1.0, static_cast<int>((t + 1) / 2));
}

LossSequence instability_losses(long rounds, InstabilityVariant variant,
                                bool scaled) {
  if (rounds < 1) throw std::invalid_argument("instability_losses: T >= 1");
  LossSequence seq;
  seq.variant = variant;
  seq.scaled = scaled;
  seq.losses.reserve(static_cast<std::size_t>(rounds));
  double largest = 0.0;
  for (long t = 1; t <= rounds; ++t) {
    const double v = instability_loss_value(t, variant);
    largest = std::max(largest, std::abs(v));
    seq.losses.push_back(LossVector{{v, 0.0}});
  }
  if (scaled) {
    seq.scale = largest;
    for (LossVector& l : seq.losses) l.values[0] /= largest;
  }
  return seq;
}

InstabilityReplay replay_instability(const LossSequence& sequence) {
  InstabilityReplay out;
  AggregateState state = AggregateState::initial(2, 0.0);
  bool first = true;
  for (const LossVector& loss : sequence.losses) {
    StepResult step = sequence.variant == InstabilityVariant::kRmPlus
                          ? rm_plus_step(state, loss)
                          : prm_plus_step(state, loss, first);
    first = false;
    out.trace.push(step.played, loss, step.lifted);
    out.strategies.push_back(step.played);
    out.aggregates.push_back(step.state.r);
    state = std::move(step.state);
  }
  return out;
}

std::vector<ExactReplayRow> exact_instability_replay(long rounds,
                                                     InstabilityVariant variant,
                                                     bool scaled) {
  if (rounds < 1) throw std::invalid_argument("exact replay: T >= 1");
  // Every loss is +-2^k, so the values are built from integer powers.
  auto power = [](long k) {
    return Rational(boost::multiprecision::cpp_int(1) << static_cast<unsigned>(k));
  };
  std::vector<Rational> values;
  Rational largest = 0;
  for (long t = 1; t <= rounds; ++t) {
    Rational v;
    if (variant == InstabilityVariant::kRmPlus) {
      v = t == 1 ? Rational(2)
                 : (t % 2 == 0 ? Rational(-power((t - 2) / 2))
                               : power((t - 1) / 2));
    } else {
      v = t == 1 ? Rational(4)
                 : (t % 2 == 0 ? Rational(-power((t - 2) / 2))
                               : power((t + 1) / 2));
    }
    largest = std::max(largest, Rational(abs(v)));
    values.push_back(v);
  }
  if (scaled) {
    for (Rational& v : values) v /= largest;
  }

  std::vector<ExactReplayRow> rows;
  std::vector<Rational> r(2, Rational(0));
  std::vector<Rational> m(2, Rational(0));
  for (long t = 1; t <= rounds; ++t) {
    const std::vector<Rational> loss{values[t - 1], Rational(0)};
    auto k = variant == InstabilityVariant::kRmPlus
                 ? detail::rm_plus(r, loss)
                 : detail::prm_plus(r, m, loss);
    rows.push_back(ExactReplayRow{t, values[t - 1], k.x, k.r_next});
    r = std::move(k.r_next);
    m = std::move(k.prediction);
  }
  return rows;
}

}  // namespace rmplus
