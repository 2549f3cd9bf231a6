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

#include "rmplus/stabilized.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rmplus/core_regret.h"
#include "rmplus/projection.h"

namespace rmplus {

namespace {

void check_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("step size eta must be positive and finite");
  }
}

void check_r0(double r0) {
  if (!(r0 > 0.0) || !std::isfinite(r0)) {
    throw std::invalid_argument("R0 must be positive and finite");
  }
}

void check_player(const PlayerLifted& p) {
  if (p.w.empty()) throw std::invalid_argument("empty lifted block");
  if (!p.prediction.empty() && p.prediction.size() != p.w.size()) {
    throw std::invalid_argument("prediction dimension mismatch");
  }
}

void check_dims(const JointLiftedState& state, const GameSpec& game) {
  const auto dims = action_dims(game);
  if (state.players.size() != dims.size()) {
    throw std::invalid_argument("state has " +
                                std::to_string(state.players.size()) +
                                " players, game has " +
                                std::to_string(dims.size()));
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (state.players[i].size() != dims[i]) {
      throw std::invalid_argument("player " + std::to_string(i) +
                                  " block has the wrong dimension");
    }
    check_player(state.players[i]);
  }
}

// w - eta v (v empty means zero).
Vec step_from(const Vec& w, std::span<const double> v, double eta) {
  Vec out = w;
  if (!v.empty()) {
    for (std::size_t a = 0; a < w.size(); ++a) out[a] -= eta * v[a];
  }
  return out;
}

template <class PlayFn, class UpdateFn>
RoundResult simultaneous_round(const JointLiftedState& state,
                               const GameSpec& game, PlayFn play,
                               UpdateFn update) {
  RoundResult out;
  const std::size_t n = state.players.size();
  for (const PlayerLifted& p : state.players) {
    Vec z = play(p);
    out.strategies.push_back(normalize(z));
    out.play_points.push_back(std::move(z));
  }
  out.losses = game_losses(game, out.strategies);
  out.state.restart_events = state.restart_events;
  out.state.iteration = state.iteration + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec f = regret_loss(out.strategies[i], out.losses[i]);
    PlayerStep s = update(state.players[i], f);
    if (s.restarted) {
      out.state.restart_events.push_back({out.state.iteration, i});
    }
    out.restarted.push_back(s.restarted);
    out.state.players.push_back(std::move(s.next));
  }
  return out;
}

}  // namespace

JointLiftedState stable_prmp_init(std::span<const std::size_t> dims, double r0) {
  check_r0(r0);
  JointLiftedState s;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("empty action set");
    s.players.push_back({Vec(d, r0), Vec()});
  }
  return s;
}

JointLiftedState smooth_prmp_init(std::span<const std::size_t> dims) {
  JointLiftedState s;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("empty action set");
    s.players.push_back(
        {project_chopped(Vec(d, 1.0 / static_cast<double>(d))), Vec()});
  }
  return s;
}

bool restart_triggered(std::span<const double> w, double r0) {
  bool all_at_floor = true;
  for (double v : w) {
    if (v > r0) return false;
    if (v != r0) all_at_floor = false;
  }
  return !all_at_floor;
}

Vec stable_play_point(const PlayerLifted& player, double eta) {
  check_player(player);
  check_eta(eta);
  return project_orthant(step_from(player.w, player.prediction, eta));
}

PlayerStep stable_update(const PlayerLifted& player, std::span<const double> f,
                         double eta, double r0) {
  check_player(player);
  check_eta(eta);
  check_r0(r0);
  if (f.size() != player.size()) {
    throw std::invalid_argument("regret loss dimension mismatch");
  }
  PlayerStep out;
  out.next.w = project_orthant(step_from(player.w, f, eta));
  if (restart_triggered(out.next.w, r0)) {
    out.next.w.assign(player.size(), r0);
    out.restarted = true;
  } else {
    out.next.prediction.assign(f.begin(), f.end());
  }
  return out;
}

Vec smooth_play_point(const PlayerLifted& player, double eta) {
  check_player(player);
  check_eta(eta);
  return project_chopped(step_from(player.w, player.prediction, eta));
}

PlayerLifted smooth_update(const PlayerLifted& player, std::span<const double> f,
                           double eta) {
  check_player(player);
  check_eta(eta);
  if (f.size() != player.size()) {
    throw std::invalid_argument("regret loss dimension mismatch");
  }
  return {project_chopped(step_from(player.w, f, eta)), Vec(f.begin(), f.end())};
}

RoundResult stable_prmp_round(const JointLiftedState& state,
                              const GameSpec& game, double eta, double r0) {
  check_eta(eta);
  check_r0(r0);
  check_dims(state, game);
  return simultaneous_round(
      state, game, [&](const PlayerLifted& p) { return stable_play_point(p, eta); },
      [&](const PlayerLifted& p, const Vec& f) {
        return stable_update(p, f, eta, r0);
      });
}

RoundResult smooth_prmp_round(const JointLiftedState& state,
                              const GameSpec& game, double eta) {
  check_eta(eta);
  check_dims(state, game);
  for (std::size_t i = 0; i < state.players.size(); ++i) {
    if (!in_chopped_orthant(state.players[i].w)) {
      throw std::invalid_argument("player " + std::to_string(i) +
                                  " lifted point lies outside the chopped orthant");
    }
  }
  return simultaneous_round(
      state, game, [&](const PlayerLifted& p) { return smooth_play_point(p, eta); },
      [&](const PlayerLifted& p, const Vec& f) {
        return PlayerStep{smooth_update(p, f, eta), false};
      });
}

}  // namespace rmplus
