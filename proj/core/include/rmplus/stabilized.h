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

#ifndef RMPLUS_STABILIZED_H_
#define RMPLUS_STABILIZED_H_

// Restarted (stable) and chopped (smooth) predictive RM+.
//
// Each player keeps a lifted point w and a prediction m. A round plays
// z = Pi_w(eta m), x = g(z), then moves w = Pi_w(eta f) where f is the
// player's regret loss at the joint strategy and stores m = f. The stable
// variant projects onto the orthant and restarts w at R0 * 1 once every
// coordinate has fallen to R0 or below; the smooth variant projects onto the
// chopped orthant {1^T r >= 1} and never restarts.

#include <cstddef>
#include <span>
#include <vector>

#include "rmplus/games.h"
#include "rmplus/types.h"

namespace rmplus {

struct PlayerLifted {
  Vec w;
  Vec prediction;  // empty means zero

  std::size_t size() const { return w.size(); }
};

struct RestartEvent {
  long iteration = 0;
  std::size_t player = 0;
  friend bool operator==(const RestartEvent&, const RestartEvent&) = default;
};

struct JointLiftedState {
  std::vector<PlayerLifted> players;
  std::vector<RestartEvent> restart_events;
  long iteration = 0;  // rounds completed
};

JointLiftedState stable_prmp_init(std::span<const std::size_t> dims, double r0);
// Each block starts at (1/d_i) 1 projected onto the chopped orthant.
JointLiftedState smooth_prmp_init(std::span<const std::size_t> dims);

// Restart test: every coordinate <= r0, except the exact fixed point
// w == r0 * 1, which would be a no-op restart.
bool restart_triggered(std::span<const double> w, double r0);

struct PlayerStep {
  PlayerLifted next;
  bool restarted = false;
};

// Per-player pieces, used directly by the alternating driver.
Vec stable_play_point(const PlayerLifted& player, double eta);
PlayerStep stable_update(const PlayerLifted& player, std::span<const double> f,
                         double eta, double r0);
Vec smooth_play_point(const PlayerLifted& player, double eta);
PlayerLifted smooth_update(const PlayerLifted& player, std::span<const double> f,
                           double eta);

struct RoundResult {
  JointLiftedState state;
  std::vector<Strategy> strategies;  // x_i = g(z_i)
  std::vector<Vec> play_points;      // z_i
  std::vector<LossVector> losses;    // l_i at the joint strategy
  std::vector<bool> restarted;
};

// One simultaneous round of each method.
RoundResult stable_prmp_round(const JointLiftedState& state,
                              const GameSpec& game, double eta, double r0);
RoundResult smooth_prmp_round(const JointLiftedState& state,
                              const GameSpec& game, double eta);

}  // namespace rmplus

#endif  // RMPLUS_STABILIZED_H_
