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

#ifndef RMPLUS_EFG_H_
#define RMPLUS_EFG_H_

// Extensive-form games with perfect recall.
//
// Nodes live in one vector with the root at index 0 and every child after
// its parent, so increasing index order is a valid top-down pass. Leaf
// payoffs are in [0, 1]; `PayoffMap` recovers original units as
// scale * v + offset[i].
//
// A behavioral strategy is a flat vector: infoset j owns the entries
// [offset_j, offset_j + n_j). Counterfactual quantities use the same
// indexing, so an (i, j, a) triple is just offset_j + a.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmplus/core_regret.h"
#include "rmplus/fixedpoint.h"
#include "rmplus/types.h"

namespace rmplus {

enum class NodeKind { kChance, kDecision, kLeaf };

struct TreeNode {
  NodeKind kind = NodeKind::kLeaf;
  std::size_t infoset = 0;             // decision nodes
  std::vector<std::size_t> children;   // chance and decision nodes
  Vec chance_probs;                    // chance nodes
  Vec payoffs;                         // leaves, one per player
};

struct Sequence {
  std::size_t infoset = 0;
  std::size_t action = 0;
  friend bool operator==(const Sequence&, const Sequence&) = default;
};

struct Infoset {
  std::size_t player = 0;
  std::size_t num_actions = 0;
  std::string label;
  // Filled in by GameTree.
  std::size_t offset = 0;
  std::optional<Sequence> parent;  // owner's last sequence before j
  std::vector<std::size_t> nodes;
};

struct PayoffMap {
  double scale = 1.0;
  Vec offsets;  // per player; empty means zero

  double to_original(std::size_t player, double v) const {
    return scale * v + (offsets.empty() ? 0.0 : offsets[player]);
  }
};

class GameTree {
 public:
  GameTree() = default;
  // Validates structure, chance distributions, payoff range and perfect
  // recall; throws std::invalid_argument on malformed input.
  GameTree(std::size_t num_players, std::vector<Infoset> infosets,
           std::vector<TreeNode> nodes, PayoffMap payoff_map = {});

  std::size_t num_players() const { return num_players_; }
  std::size_t num_infosets() const { return infosets_.size(); }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t dimension() const { return dimension_; }  // P
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<Infoset>& infosets() const { return infosets_; }
  const Infoset& infoset(std::size_t j) const { return infosets_[j]; }
  const PayoffMap& payoff_map() const { return payoff_map_; }

  // Infosets of one player, parents before children.
  const std::vector<std::size_t>& player_infosets(std::size_t player) const {
    return player_infosets_[player];
  }
  // Last own sequence of `player` on the path to `node`.
  const std::optional<Sequence>& last_sequence(std::size_t node,
                                               std::size_t player) const {
    return last_sequence_[node * num_players_ + player];
  }
  // Infosets of the owner whose parent sequence is (j, a).
  const std::vector<std::size_t>& child_infosets(std::size_t j,
                                                 std::size_t a) const {
    return child_infosets_[infosets_[j].offset + a];
  }
  const std::vector<std::size_t>& root_infosets(std::size_t player) const {
    return root_infosets_[player];
  }
  const std::vector<std::size_t>& leaves() const { return leaves_; }

  BlockLayout layout(double floor = 1.0) const;

 private:
  std::size_t num_players_ = 0;
  std::vector<Infoset> infosets_;
  std::vector<TreeNode> nodes_;
  PayoffMap payoff_map_;
  std::size_t dimension_ = 0;
  std::vector<std::vector<std::size_t>> player_infosets_;
  std::vector<std::vector<std::size_t>> root_infosets_;
  std::vector<std::vector<std::size_t>> child_infosets_;
  std::vector<std::optional<Sequence>> last_sequence_;
  std::vector<std::size_t> leaves_;
};

// ------------------------------------------------------------ strategies

Vec uniform_behavioral(const GameTree& tree);
// Throws unless every infoset block is a distribution.
void check_behavioral(const GameTree& tree, std::span<const double> x);
std::vector<Strategy> behavioral_blocks(const GameTree& tree,
                                        std::span<const double> x);

// Own reach probability of every infoset for its owner.
Vec own_reach(const GameTree& tree, std::span<const double> x);

// Expected leaf payoff per player, in [0, 1] units.
Vec expected_values(const GameTree& tree, std::span<const double> x);

// G_{ija}: reach of everyone but i (chance included) times i's value after
// taking a at the nodes of j.
Vec counterfactual_values(const GameTree& tree, std::span<const double> x);

// H_{ija} = G_{ija} - <G_{ij}, x^j>.
Vec counterfactual_regret_operator(const GameTree& tree,
                                   std::span<const double> x);
Vec counterfactual_regrets_from_values(const GameTree& tree,
                                       std::span<const double> x,
                                       std::span<const double> values);

// Blockwise g on a lifted point.
Vec lifted_normalize(std::span<const double> z, const BlockLayout& layout);
// max_j sqrt(n_j / floor_j).
double lifted_normalize_lipschitz(const BlockLayout& layout);

// ------------------------------------------------------- best responses

// Per-player leaf weights pi_{-i}(h) v_i(h); the player's utility is linear
// in its own sequence-form strategy with these coefficients.
std::vector<Vec> leaf_coefficients(const GameTree& tree,
                                   std::span<const double> x);

// Max over pure own strategies of sum_h q(sigma_i(h)) c(h).
double best_response_value(const GameTree& tree, std::size_t player,
                           std::span<const double> leaf_weights);

struct Exploitability {
  Vec per_player;  // original payoff units
  double max() const;
  double sum() const;
};
Exploitability exploitability(const GameTree& tree, std::span<const double> x);

// Weighted sequence-form regrets, plus the per-infoset counterfactual
// regrets that bound them.
class SequenceRegretTracker {
 public:
  explicit SequenceRegretTracker(const GameTree& tree);

  // `values` are the counterfactual values at x (computed if empty).
  void record(std::span<const double> x, double weight,
              std::span<const double> values = {});

  double total_weight() const { return total_weight_; }
  // Regret against the best pure sequence-form strategy, [0,1] units.
  double regret(std::size_t player) const;
  // max over pure x^ of sum over reached j of [max_a R_j(a)]+.
  double cfr_bound(std::size_t player) const;
  // max over pure x^ of sum over reached j of R_j(x^_j); equals regret().
  double decomposed_regret(std::size_t player) const;
  const Vec& counterfactual_regrets() const { return cf_regrets_; }

 private:
  const GameTree* tree_;
  std::vector<Vec> leaf_weights_;
  Vec realized_;
  Vec cf_regrets_;
  double total_weight_ = 0.0;
};

// Average of behavioral strategies taken in sequence form, converted back;
// infosets never reached get the uniform distribution.
class SequenceAverager {
 public:
  explicit SequenceAverager(const GameTree& tree);
  void add(std::span<const double> x, double weight);
  Vec average() const;

 private:
  const GameTree* tree_;
  Vec numerator_;
  Vec denominator_;  // per infoset
};

// --------------------------------------------------------------- solvers

// One PRM+ state per infoset, fed the loss -G_j.
struct CfrState {
  std::vector<AggregateState> infosets;
};
CfrState predictive_cfr_init(const GameTree& tree);
// Behavioral strategy the state plays: g([R_j + m_j]+) per infoset.
Vec cfr_strategy(const CfrState& state, const GameTree& tree);
// Advances the infosets of `player` given counterfactual values.
CfrState cfr_update_player(const CfrState& state, const GameTree& tree,
                           std::size_t player, std::span<const double> values);

struct CfrRound {
  CfrState state;
  Vec strategy;  // played this round
  Vec values;    // counterfactual values at `strategy`
};
CfrRound predictive_cfr_round(const CfrState& state, const GameTree& tree);

// F(z) = -H(g^(z)) over per-infoset chopped orthants.
GameOperator make_efg_operator(const GameTree& tree, double floor = 1.0);
// sqrt(2P) * max_j sqrt(n_j / floor_j).
double efg_lipschitz_bound(const GameTree& tree, const BlockLayout& layout);

LiftedRound clairvoyant_cfr_round(std::span<const double> z_prev,
                                  const GameOperator& op, double eta);
LiftedRound clairvoyant_cfr_round(std::span<const double> z_prev,
                                  const GameTree& tree, double eta);

// --------------------------------------------------------------- builders

// Two-player Kuhn poker with `ranks` cards (3..6).
GameTree build_kuhn(std::size_t players, std::size_t ranks);
// Liar's dice, one die per player; 2 or 3 players, 2 faces.
GameTree build_liars_dice(std::size_t players, std::size_t faces);
// Simultaneous-move encoding of a matrix game: player 0 picks a row, then
// player 1 picks a column without observing it.
GameTree build_matrix_tree(const MatrixGame& game);

}  // namespace rmplus

#endif  // RMPLUS_EFG_H_
