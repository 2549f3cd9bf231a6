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

#ifndef RMPLUS_CORE_REGRET_H_
#define RMPLUS_CORE_REGRET_H_

// Lifted-space machinery shared by every solver: the normalization map g,
// the instantaneous regret operator f, vanilla and predictive RM+ steps, and
// regret bookkeeping in both the strategy space and the lifted orthant.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rmplus/types.h"

namespace rmplus {

// g(r) = r / ||r||_1, with 0/0 defined as the uniform distribution.
// Throws std::invalid_argument on negative or non-finite entries.
Strategy normalize(std::span<const double> r);

// f(x, l) = l - <x, l> 1.
Vec regret_loss(const Strategy& x, const LossVector& loss);

// Aggregate payoff R plus the prediction m used by the predictive variant.
struct AggregateState {
  Vec r;
  Vec prediction;
  double r0 = 0.0;

  // R^1 = r0 * 1 with an empty (zero) prediction.
  static AggregateState initial(std::size_t d, double r0 = 0.0);

  std::size_t size() const { return r.size(); }
};

struct StepResult {
  AggregateState state;
  Strategy played;
  Vec lifted;  // the nonnegative vector `played` was normalized from
};

// Strategy RM+ would play from `state` before seeing the next loss.
Strategy rm_plus_strategy(const AggregateState& state);

// One RM+ round: x = g(R), R' = [R + <x,l> 1 - l]+.
StepResult rm_plus_step(const AggregateState& state, const LossVector& loss);

// Strategy PRM+ would play: g([R + m]+). With `reset_prediction` the stored
// prediction is treated as zero (first round, or after an external restart).
Strategy prm_plus_strategy(const AggregateState& state,
                           bool reset_prediction = false);

// One PRM+ round. Plays g([R + m]+), updates R' = [R - f]+ and stores the
// next prediction m' = -f where f = f(x, l). With m == 0 throughout this
// reproduces rm_plus_step exactly.
StepResult prm_plus_step(const AggregateState& state, const LossVector& loss,
                         bool reset_prediction = false);

// Cumulative per-action regret: entry a holds sum_t <x^t, l^t> - l^t[a].
class RegretLedger {
 public:
  RegretLedger() = default;
  explicit RegretLedger(std::size_t d) : cumulative_(d, 0.0) {}

  void record(const Strategy& x, const LossVector& loss, double weight = 1.0);
  // Same update given f(x, l) directly: regret[a] -= weight * f[a].
  void record_regret_loss(std::span<const double> f, double weight = 1.0);

  std::size_t size() const { return cumulative_.size(); }
  long rounds() const { return rounds_; }
  double total_weight() const { return total_weight_; }
  const Vec& cumulative() const { return cumulative_; }

  double max_regret() const;
  double regret_against(const Strategy& comparator) const;

 private:
  Vec cumulative_;
  long rounds_ = 0;
  double total_weight_ = 0.0;
};

// Stored per-round iterates of one player: x^t, l^t and the lifted point
// R^t with x^t = g(R^t).
struct IterateTrace {
  std::vector<Strategy> strategies;
  std::vector<LossVector> losses;
  std::vector<Vec> lifted;

  std::size_t rounds() const { return strategies.size(); }
  void push(Strategy x, LossVector loss, Vec lifted_point);
};

// Regret of the strategy sequence against `comparator` and regret of the
// lifted sequence against R = comparator facing f(x^t, l^t). The two agree
// whenever x^t = g(R^t). Throws on an incomplete or inconsistent trace.
std::pair<double, double> lifted_regret_equivalence(
    const IterateTrace& trace, const Strategy& comparator);

}  // namespace rmplus

#endif  // RMPLUS_CORE_REGRET_H_
