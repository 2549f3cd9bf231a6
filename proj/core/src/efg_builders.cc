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

#include <map>
#include <stdexcept>
#include <string>

#include "rmplus/efg.h"

namespace rmplus {

namespace {

// Accumulates nodes in creation order and interns infosets by label.
class TreeBuilder {
 public:
  explicit TreeBuilder(std::size_t players) : players_(players) {}

  std::size_t reserve() {
    nodes_.emplace_back();
    return nodes_.size() - 1;
  }
  TreeNode& node(std::size_t id) { return nodes_[id]; }

  std::size_t infoset(const std::string& label, std::size_t player,
                      std::size_t actions) {
    auto [it, inserted] = by_label_.try_emplace(label, infosets_.size());
    if (inserted) {
      Infoset info;
      info.player = player;
      info.num_actions = actions;
      info.label = label;
      infosets_.push_back(std::move(info));
    }
    return it->second;
  }

  GameTree build(PayoffMap map) {
    return GameTree(players_, std::move(infosets_), std::move(nodes_), std::move(map));
  }

 private:
  std::size_t players_;
  std::vector<TreeNode> nodes_;
  std::vector<Infoset> infosets_;
  std::map<std::string, std::size_t> by_label_;
};

// ---------------------------------------------------------------- Kuhn

struct KuhnBuild {
  TreeBuilder& b;
  std::size_t cards[2];

  // Player 0 net payoff at showdown with `stake` in the pot from each.
  double showdown(double stake) const { return cards[0] > cards[1] ? stake : -stake; }

  void leaf(std::size_t id, double v0) {
    TreeNode& n = b.node(id);
    n.kind = NodeKind::kLeaf;
    n.payoffs = {(v0 + 2.0) / 4.0, (-v0 + 2.0) / 4.0};
  }

  // Histories: "" -> p0 {check, bet}; "c" -> p1 {check, bet};
  // "b" -> p1 {fold, call}; "cb" -> p0 {fold, call}.
  void expand(std::size_t id, const std::string& history) {
    if (history == "cc") return leaf(id, showdown(1.0));
    if (history == "bf") return leaf(id, 1.0);
    if (history == "bc" || history == "cbc") return leaf(id, showdown(2.0));
    if (history == "cbf") return leaf(id, -1.0);

    const std::size_t player = history.size() % 2;
    const bool facing_bet = !history.empty() && history.back() == 'b';
    const std::string label =
        "p" + std::to_string(player) + ":" + std::to_string(cards[player]) + ":" + history;
    const std::size_t j = b.infoset(label, player, 2);
    const char moves[2] = {facing_bet ? 'f' : 'c', facing_bet ? 'c' : 'b'};
    std::size_t kids[2];
    for (std::size_t a = 0; a < 2; ++a) kids[a] = b.reserve();
    TreeNode& n = b.node(id);
    n.kind = NodeKind::kDecision;
    n.infoset = j;
    n.children = {kids[0], kids[1]};
    for (std::size_t a = 0; a < 2; ++a) expand(kids[a], history + moves[a]);
  }
};

// ---------------------------------------------------------- Liar's dice

struct DiceBuild {
  TreeBuilder& b;
  std::size_t players;
  std::size_t faces;
  std::vector<std::size_t> dice;

  std::size_t num_bids() const { return players * faces; }

  void leaf(std::size_t id, std::size_t loser) {
    TreeNode& n = b.node(id);
    n.kind = NodeKind::kLeaf;
    n.payoffs.assign(players, 0.0);
    const double win = 1.0 / static_cast<double>(players - 1);
    for (std::size_t i = 0; i < players; ++i) {
      const double v = i == loser ? -1.0 : win;
      n.payoffs[i] = (v + 1.0) / 2.0;
    }
  }

  // Bid k claims at least k / faces + 1 dice showing face k % faces.
  void expand(std::size_t id, std::vector<std::size_t>& bids) {
    const std::size_t player = bids.size() % players;
    std::string label = "p" + std::to_string(player) + ":" +
                        std::to_string(dice[player]) + ":";
    for (std::size_t k = 0; k < bids.size(); ++k) {
      if (k > 0) label += ',';
      label += std::to_string(bids[k]);
    }
    const std::size_t first = bids.empty() ? 0 : bids.back() + 1;
    const bool can_call = !bids.empty();
    const std::size_t actions = (can_call ? 1 : 0) + (num_bids() - first);
    const std::size_t j = b.infoset(label, player, actions);
    std::vector<std::size_t> kids(actions);
    for (auto& k : kids) k = b.reserve();
    TreeNode& n = b.node(id);
    n.kind = NodeKind::kDecision;
    n.infoset = j;
    n.children = kids;

    std::size_t a = 0;
    if (can_call) {
      const std::size_t bid = bids.back();
      const std::size_t quantity = bid / faces + 1;
      const std::size_t face = bid % faces;
      std::size_t count = 0;
      for (std::size_t d : dice) count += d == face ? 1 : 0;
      const std::size_t bidder = (player + players - 1) % players;
      leaf(kids[a++], count >= quantity ? player : bidder);
    }
    for (std::size_t bid = first; bid < num_bids(); ++bid) {
      bids.push_back(bid);
      expand(kids[a++], bids);
      bids.pop_back();
    }
  }
};

}  // namespace

GameTree build_kuhn(std::size_t players, std::size_t ranks) {
  if (players != 2) throw std::invalid_argument("Kuhn poker: only 2 players are supported");
  if (ranks < 3 || ranks > 6) throw std::invalid_argument("Kuhn poker: ranks must be in 3..6");
  TreeBuilder b(2);
  const std::size_t root = b.reserve();
  std::vector<std::size_t> deals;
  for (std::size_t c0 = 0; c0 < ranks; ++c0) {
    for (std::size_t c1 = 0; c1 < ranks; ++c1) {
      if (c0 != c1) deals.push_back(c0 * ranks + c1);
    }
  }
  std::vector<std::size_t> kids;
  for (std::size_t k = 0; k < deals.size(); ++k) kids.push_back(b.reserve());
  {
    TreeNode& n = b.node(root);
    n.kind = NodeKind::kChance;
    n.children = kids;
    n.chance_probs.assign(deals.size(), 1.0 / static_cast<double>(deals.size()));
  }
  for (std::size_t k = 0; k < deals.size(); ++k) {
    KuhnBuild kb{b, {deals[k] / ranks, deals[k] % ranks}};
    kb.expand(kids[k], "");
  }
  return b.build(PayoffMap{4.0, {-2.0, -2.0}});
}

GameTree build_liars_dice(std::size_t players, std::size_t faces) {
  if (players != 2 && players != 3) {
    throw std::invalid_argument("Liar's dice: players must be 2 or 3");
  }
  if (faces != 2) throw std::invalid_argument("Liar's dice: only 2 faces are supported");
  TreeBuilder b(players);
  const std::size_t root = b.reserve();
  std::size_t outcomes = 1;
  for (std::size_t i = 0; i < players; ++i) outcomes *= faces;
  std::vector<std::size_t> kids;
  for (std::size_t k = 0; k < outcomes; ++k) kids.push_back(b.reserve());
  {
    TreeNode& n = b.node(root);
    n.kind = NodeKind::kChance;
    n.children = kids;
    n.chance_probs.assign(outcomes, 1.0 / static_cast<double>(outcomes));
  }
  for (std::size_t k = 0; k < outcomes; ++k) {
    DiceBuild db{b, players, faces, std::vector<std::size_t>(players)};
    std::size_t rest = k;
    for (std::size_t i = players; i-- > 0;) {
      db.dice[i] = rest % faces;
      rest /= faces;
    }
    std::vector<std::size_t> bids;
    db.expand(kids[k], bids);
  }
  return b.build(PayoffMap{2.0, Vec(players, -1.0)});
}

GameTree build_matrix_tree(const MatrixGame& game) {
  const auto& e = game.entries();
  double lo = e.front();
  double hi = e.front();
  for (double v : e) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double scale = hi > lo ? hi - lo : 1.0;
  TreeBuilder b(2);
  const std::size_t root = b.reserve();
  const std::size_t row = b.infoset("row", 0, game.rows());
  const std::size_t col = b.infoset("col", 1, game.cols());
  std::vector<std::size_t> mids;
  for (std::size_t i = 0; i < game.rows(); ++i) mids.push_back(b.reserve());
  {
    TreeNode& n = b.node(root);
    n.kind = NodeKind::kDecision;
    n.infoset = row;
    n.children = mids;
  }
  for (std::size_t i = 0; i < game.rows(); ++i) {
    std::vector<std::size_t> leaves;
    for (std::size_t j = 0; j < game.cols(); ++j) {
      const std::size_t id = b.reserve();
      TreeNode& leaf = b.node(id);
      leaf.kind = NodeKind::kLeaf;
      const double v = (game.at(i, j) - lo) / scale;
      leaf.payoffs = {v, 1.0 - v};
      leaves.push_back(id);
    }
    TreeNode& n = b.node(mids[i]);
    n.kind = NodeKind::kDecision;
    n.infoset = col;
    n.children = leaves;
  }
  // u_1 = A = scale v_1 + lo, u_2 = -A = scale v_2 - (lo + scale).
  return b.build(PayoffMap{scale, {lo, -(lo + scale)}});
}

}  // namespace rmplus
