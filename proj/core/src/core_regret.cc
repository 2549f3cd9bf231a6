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

#include "rmplus/core_regret.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rmplus/detail/regret_kernels.h"

namespace rmplus {

// ---------------------------------------------------------------- types.h

Strategy::Strategy(Vec probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("Strategy: empty vector");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("Strategy: entries must be finite and >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw std::invalid_argument("Strategy: entries sum to " +
                                std::to_string(total) + ", expected 1");
  }
}

Strategy Strategy::uniform(std::size_t d) {
  if (d == 0) throw std::invalid_argument("Strategy::uniform: d must be > 0");
  return Strategy(Vec(d, 1.0 / static_cast<double>(d)));
}

Strategy Strategy::pure(std::size_t d, std::size_t action) {
  if (action >= d) throw std::invalid_argument("Strategy::pure: bad action");
  Vec v(d, 0.0);
  v[action] = 1.0;
  return Strategy(std::move(v));
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double e) { return std::isfinite(e); });
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += std::abs(e);
  return s;
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("distance: size mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double l2_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

// ----------------------------------------------------------- core_regret.h

namespace {

void check_loss(const LossVector& loss, std::size_t d) {
  if (loss.size() != d) {
    throw std::invalid_argument("loss dimension " +
                                std::to_string(loss.size()) +
                                " does not match state dimension " +
                                std::to_string(d));
  }
  if (!all_finite(loss.values)) {
    throw std::invalid_argument("loss vector has non-finite entries");
  }
}

void check_state(const AggregateState& state) {
  if (state.r.empty()) throw std::invalid_argument("empty aggregate state");
  for (double v : state.r) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("aggregate state must be finite and >= 0");
    }
  }
  if (!state.prediction.empty() && state.prediction.size() != state.r.size()) {
    throw std::invalid_argument("prediction dimension mismatch");
  }
}

Vec prediction_or_zero(const AggregateState& state, bool reset) {
  if (reset || state.prediction.empty()) return Vec(state.r.size(), 0.0);
  return state.prediction;
}

}  // namespace

Strategy normalize(std::span<const double> r) {
  if (r.empty()) throw std::invalid_argument("normalize: empty vector");
  for (double v : r) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("normalize: non-finite entry");
    }
    if (v < 0.0) throw std::invalid_argument("normalize: negative entry");
  }
  return Strategy(detail::normalize(Vec(r.begin(), r.end())));
}

Vec regret_loss(const Strategy& x, const LossVector& loss) {
  if (x.size() != loss.size()) {
    throw std::invalid_argument("regret_loss: dimension mismatch");
  }
  return detail::regret_loss(x.probs(), loss.values);
}

AggregateState AggregateState::initial(std::size_t d, double r0) {
  if (d == 0) throw std::invalid_argument("AggregateState: d must be > 0");
  if (!(r0 >= 0.0) || !std::isfinite(r0)) {
    throw std::invalid_argument("AggregateState: r0 must be finite and >= 0");
  }
  return AggregateState{Vec(d, r0), Vec(d, 0.0), r0};
}

Strategy rm_plus_strategy(const AggregateState& state) {
  check_state(state);
  return Strategy(detail::normalize(state.r));
}

StepResult rm_plus_step(const AggregateState& state, const LossVector& loss) {
  check_state(state);
  check_loss(loss, state.size());
  auto k = detail::rm_plus(state.r, loss.values);
  return StepResult{
      AggregateState{std::move(k.r_next), std::move(k.prediction), state.r0},
      Strategy(std::move(k.x)), std::move(k.lifted)};
}

Strategy prm_plus_strategy(const AggregateState& state, bool reset_prediction) {
  check_state(state);
  const Vec m = prediction_or_zero(state, reset_prediction);
  Vec lifted(state.size());
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    lifted[i] = std::max(state.r[i] + m[i], 0.0);
  }
  return Strategy(detail::normalize(lifted));
}

StepResult prm_plus_step(const AggregateState& state, const LossVector& loss,
                         bool reset_prediction) {
  check_state(state);
  check_loss(loss, state.size());
  const Vec m = prediction_or_zero(state, reset_prediction);
  auto k = detail::prm_plus(state.r, m, loss.values);
  return StepResult{
      AggregateState{std::move(k.r_next), std::move(k.prediction), state.r0},
      Strategy(std::move(k.x)), std::move(k.lifted)};
}

void RegretLedger::record(const Strategy& x, const LossVector& loss,
                          double weight) {
  if (x.size() != size() || loss.size() != size()) {
    throw std::invalid_argument("RegretLedger: dimension mismatch");
  }
  record_regret_loss(regret_loss(x, loss), weight);
}

void RegretLedger::record_regret_loss(std::span<const double> f,
                                      double weight) {
  if (f.size() != size()) {
    throw std::invalid_argument("RegretLedger: dimension mismatch");
  }
  for (std::size_t a = 0; a < f.size(); ++a) cumulative_[a] -= weight * f[a];
  ++rounds_;
  total_weight_ += weight;
}

double RegretLedger::max_regret() const {
  if (cumulative_.empty()) return 0.0;
  return *std::max_element(cumulative_.begin(), cumulative_.end());
}

double RegretLedger::regret_against(const Strategy& comparator) const {
  return dot(cumulative_, comparator.probs());
}

void IterateTrace::push(Strategy x, LossVector loss, Vec lifted_point) {
  strategies.push_back(std::move(x));
  losses.push_back(std::move(loss));
  lifted.push_back(std::move(lifted_point));
}

std::pair<double, double> lifted_regret_equivalence(
    const IterateTrace& trace, const Strategy& comparator) {
  const std::size_t rounds = trace.strategies.size();
  if (rounds == 0 || trace.losses.size() != rounds ||
      trace.lifted.size() != rounds) {
    throw std::invalid_argument(
        "lifted_regret_equivalence: trace is incomplete");
  }
  double strategy_regret = 0.0;
  double lifted_regret = 0.0;
  for (std::size_t t = 0; t < rounds; ++t) {
    const Strategy& x = trace.strategies[t];
    const LossVector& loss = trace.losses[t];
    const Vec& lifted = trace.lifted[t];
    if (x.size() != comparator.size() || loss.size() != x.size() ||
        lifted.size() != x.size()) {
      throw std::invalid_argument(
          "lifted_regret_equivalence: dimension mismatch at round " +
          std::to_string(t + 1));
    }
    const Vec f = regret_loss(x, loss);
    for (std::size_t a = 0; a < x.size(); ++a) {
      strategy_regret += loss[a] * (x[a] - comparator[a]);
      lifted_regret += f[a] * (lifted[a] - comparator[a]);
    }
  }
  return {strategy_regret, lifted_regret};
}

}  // namespace rmplus
