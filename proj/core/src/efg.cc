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

#include "rmplus/efg.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rmplus/detail/regret_kernels.h"

namespace rmplus {

namespace {

constexpr double kProbTolerance = 1e-12;

[[noreturn]] void malformed(const std::string& what) {
  throw std::invalid_argument("GameTree: " + what);
}

}  // namespace

GameTree::GameTree(std::size_t num_players, std::vector<Infoset> infosets,
                   std::vector<TreeNode> nodes, PayoffMap payoff_map)
    : num_players_(num_players),
      infosets_(std::move(infosets)),
      nodes_(std::move(nodes)),
      payoff_map_(std::move(payoff_map)) {
  if (num_players_ == 0) malformed("no players");
  if (nodes_.empty()) malformed("no nodes");
  if (!payoff_map_.offsets.empty() && payoff_map_.offsets.size() != num_players_) {
    malformed("payoff map needs one offset per player");
  }
  if (!(payoff_map_.scale > 0.0)) malformed("payoff scale must be positive");

  for (std::size_t j = 0; j < infosets_.size(); ++j) {
    Infoset& info = infosets_[j];
    if (info.player >= num_players_) malformed("infoset " + std::to_string(j) + " has a bad owner");
    if (info.num_actions == 0) malformed("infoset " + std::to_string(j) + " has no actions");
    info.offset = dimension_;
    info.parent.reset();
    info.nodes.clear();
    dimension_ += info.num_actions;
  }

  std::vector<bool> has_parent(nodes_.size(), false);
  for (std::size_t h = 0; h < nodes_.size(); ++h) {
    const TreeNode& node = nodes_[h];
    const std::string where = "node " + std::to_string(h);
    switch (node.kind) {
      case NodeKind::kLeaf:
        if (!node.children.empty()) malformed(where + ": leaf with children");
        if (node.payoffs.size() != num_players_) malformed(where + ": needs one payoff per player");
        for (double v : node.payoffs) {
          if (!std::isfinite(v) || v < -kProbTolerance || v > 1.0 + kProbTolerance) {
            malformed(where + ": leaf payoffs must lie in [0, 1]");
          }
        }
        leaves_.push_back(h);
        break;
      case NodeKind::kChance: {
        if (node.children.empty()) malformed(where + ": chance node without children");
        if (node.chance_probs.size() != node.children.size()) {
          malformed(where + ": one probability per child required");
        }
        double total = 0.0;
        for (double p : node.chance_probs) {
          if (!std::isfinite(p) || p < 0.0) malformed(where + ": negative chance probability");
          total += p;
        }
        if (std::abs(total - 1.0) > kProbTolerance) {
          malformed(where + ": chance probabilities sum to " + std::to_string(total));
        }
        break;
      }
      case NodeKind::kDecision:
        if (node.infoset >= infosets_.size()) malformed(where + ": unknown infoset");
        if (node.children.size() != infosets_[node.infoset].num_actions) {
          malformed(where + ": child count differs from its infoset's action count");
        }
        break;
    }
    for (std::size_t c : node.children) {
      if (c <= h || c >= nodes_.size()) malformed(where + ": children must follow their parent");
      if (has_parent[c]) malformed("node " + std::to_string(c) + " has two parents");
      has_parent[c] = true;
    }
  }
  for (std::size_t h = 1; h < nodes_.size(); ++h) {
    if (!has_parent[h]) malformed("node " + std::to_string(h) + " is unreachable");
  }

  last_sequence_.assign(nodes_.size() * num_players_, std::nullopt);
  std::vector<bool> seen(infosets_.size(), false);
  for (std::size_t h = 0; h < nodes_.size(); ++h) {
    const TreeNode& node = nodes_[h];
    if (node.kind == NodeKind::kDecision) {
      Infoset& info = infosets_[node.infoset];
      const auto& mine = last_sequence_[h * num_players_ + info.player];
      if (!seen[node.infoset]) {
        info.parent = mine;
        seen[node.infoset] = true;
      } else if (info.parent != mine) {
        malformed("infoset " + std::to_string(node.infoset) +
                  " violates perfect recall");
      }
      info.nodes.push_back(h);
    }
    for (std::size_t a = 0; a < node.children.size(); ++a) {
      const std::size_t c = node.children[a];
      std::copy_n(last_sequence_.begin() + static_cast<long>(h * num_players_),
                  num_players_,
                  last_sequence_.begin() + static_cast<long>(c * num_players_));
      if (node.kind == NodeKind::kDecision) {
        last_sequence_[c * num_players_ + infosets_[node.infoset].player] =
            Sequence{node.infoset, a};
      }
    }
  }
  for (std::size_t j = 0; j < infosets_.size(); ++j) {
    if (!seen[j]) malformed("infoset " + std::to_string(j) + " has no nodes");
  }

  child_infosets_.assign(dimension_, {});
  root_infosets_.assign(num_players_, {});
  for (std::size_t j = 0; j < infosets_.size(); ++j) {
    const Infoset& info = infosets_[j];
    if (info.parent) {
      child_infosets_[infosets_[info.parent->infoset].offset + info.parent->action]
          .push_back(j);
    } else {
      root_infosets_[info.player].push_back(j);
    }
  }
  player_infosets_.assign(num_players_, {});
  for (std::size_t i = 0; i < num_players_; ++i) {
    std::vector<std::size_t> stack(root_infosets_[i].rbegin(), root_infosets_[i].rend());
    while (!stack.empty()) {
      const std::size_t j = stack.back();
      stack.pop_back();
      player_infosets_[i].push_back(j);
      for (std::size_t a = infosets_[j].num_actions; a-- > 0;) {
        const auto& kids = child_infosets_[infosets_[j].offset + a];
        stack.insert(stack.end(), kids.rbegin(), kids.rend());
      }
    }
  }
}

BlockLayout GameTree::layout(double floor) const {
  std::vector<std::size_t> dims;
  dims.reserve(infosets_.size());
  for (const Infoset& info : infosets_) dims.push_back(info.num_actions);
  return BlockLayout::uniform(dims, floor);
}

// ------------------------------------------------------------ strategies

Vec uniform_behavioral(const GameTree& tree) {
  Vec x(tree.dimension());
  for (const Infoset& info : tree.infosets()) {
    std::fill_n(x.begin() + static_cast<long>(info.offset), info.num_actions,
                1.0 / static_cast<double>(info.num_actions));
  }
  return x;
}

void check_behavioral(const GameTree& tree, std::span<const double> x) {
  if (x.size() != tree.dimension()) {
    throw std::invalid_argument("behavioral strategy has dimension " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(tree.dimension()));
  }
  for (std::size_t j = 0; j < tree.num_infosets(); ++j) {
    const Infoset& info = tree.infoset(j);
    double total = 0.0;
    for (std::size_t a = 0; a < info.num_actions; ++a) {
      const double p = x[info.offset + a];
      if (!std::isfinite(p) || p < 0.0) {
        throw std::invalid_argument("behavioral strategy: bad entry at infoset " +
                                    std::to_string(j));
      }
      total += p;
    }
    if (std::abs(total - 1.0) > Strategy::kSumTolerance * 10) {
      throw std::invalid_argument("behavioral strategy: infoset " +
                                  std::to_string(j) + " sums to " +
                                  std::to_string(total));
    }
  }
}

std::vector<Strategy> behavioral_blocks(const GameTree& tree,
                                        std::span<const double> x) {
  check_behavioral(tree, x);
  std::vector<Strategy> out;
  for (const Infoset& info : tree.infosets()) {
    out.emplace_back(Vec(x.begin() + static_cast<long>(info.offset),
                         x.begin() + static_cast<long>(info.offset + info.num_actions)));
  }
  return out;
}

Vec own_reach(const GameTree& tree, std::span<const double> x) {
  Vec reach(tree.num_infosets(), 1.0);
  for (std::size_t i = 0; i < tree.num_players(); ++i) {
    for (std::size_t j : tree.player_infosets(i)) {
      const auto& parent = tree.infoset(j).parent;
      if (parent) {
        reach[j] = reach[parent->infoset] *
                   x[tree.infoset(parent->infoset).offset + parent->action];
      }
    }
  }
  return reach;
}

namespace {

// Opponent-and-chance reach per (node, player) and expected value per
// (node, player), both flattened node-major.
struct TreePasses {
  Vec reach;
  Vec value;
};

TreePasses tree_passes(const GameTree& tree, std::span<const double> x) {
  check_behavioral(tree, x);
  const std::size_t n = tree.num_players();
  const auto& nodes = tree.nodes();
  TreePasses out;
  out.reach.assign(nodes.size() * n, 0.0);
  out.value.assign(nodes.size() * n, 0.0);
  std::fill_n(out.reach.begin(), n, 1.0);
  for (std::size_t h = 0; h < nodes.size(); ++h) {
    const TreeNode& node = nodes[h];
    const double* rh = &out.reach[h * n];
    if (node.kind == NodeKind::kChance) {
      for (std::size_t k = 0; k < node.children.size(); ++k) {
        double* rc = &out.reach[node.children[k] * n];
        for (std::size_t i = 0; i < n; ++i) rc[i] = rh[i] * node.chance_probs[k];
      }
    } else if (node.kind == NodeKind::kDecision) {
      const Infoset& info = tree.infoset(node.infoset);
      for (std::size_t a = 0; a < node.children.size(); ++a) {
        const double q = x[info.offset + a];
        double* rc = &out.reach[node.children[a] * n];
        for (std::size_t i = 0; i < n; ++i) rc[i] = i == info.player ? rh[i] : rh[i] * q;
      }
    }
  }
  for (std::size_t h = nodes.size(); h-- > 0;) {
    const TreeNode& node = nodes[h];
    double* vh = &out.value[h * n];
    if (node.kind == NodeKind::kLeaf) {
      std::copy(node.payoffs.begin(), node.payoffs.end(), vh);
    } else {
      const Infoset* info =
          node.kind == NodeKind::kDecision ? &tree.infoset(node.infoset) : nullptr;
      for (std::size_t k = 0; k < node.children.size(); ++k) {
        const double p = info ? x[info->offset + k] : node.chance_probs[k];
        const double* vc = &out.value[node.children[k] * n];
        for (std::size_t i = 0; i < n; ++i) vh[i] += p * vc[i];
      }
    }
  }
  return out;
}

}  // namespace

Vec expected_values(const GameTree& tree, std::span<const double> x) {
  const TreePasses passes = tree_passes(tree, x);
  return Vec(passes.value.begin(),
             passes.value.begin() + static_cast<long>(tree.num_players()));
}

Vec counterfactual_values(const GameTree& tree, std::span<const double> x) {
  const TreePasses passes = tree_passes(tree, x);
  const std::size_t n = tree.num_players();
  Vec g(tree.dimension(), 0.0);
  for (std::size_t j = 0; j < tree.num_infosets(); ++j) {
    const Infoset& info = tree.infoset(j);
    const std::size_t i = info.player;
    for (std::size_t h : info.nodes) {
      const double r = passes.reach[h * n + i];
      const auto& children = tree.nodes()[h].children;
      for (std::size_t a = 0; a < children.size(); ++a) {
        g[info.offset + a] += r * passes.value[children[a] * n + i];
      }
    }
  }
  return g;
}

Vec counterfactual_regrets_from_values(const GameTree& tree,
                                       std::span<const double> x,
                                       std::span<const double> values) {
  if (values.size() != tree.dimension() || x.size() != tree.dimension()) {
    throw std::invalid_argument("counterfactual regrets: dimension mismatch");
  }
  Vec h(values.begin(), values.end());
  for (const Infoset& info : tree.infosets()) {
    double inner = 0.0;
    for (std::size_t a = 0; a < info.num_actions; ++a) {
      inner += values[info.offset + a] * x[info.offset + a];
    }
    for (std::size_t a = 0; a < info.num_actions; ++a) h[info.offset + a] -= inner;
  }
  return h;
}

Vec counterfactual_regret_operator(const GameTree& tree,
                                   std::span<const double> x) {
  return counterfactual_regrets_from_values(tree, x, counterfactual_values(tree, x));
}

Vec lifted_normalize(std::span<const double> z, const BlockLayout& layout) {
  if (z.size() != layout.size()) {
    throw std::invalid_argument("lifted_normalize: dimension mismatch");
  }
  Vec out(z.size());
  for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
    const auto block = layout.block(z, b);
    for (double v : block) {
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("lifted_normalize: negative or non-finite entry in block " +
                                    std::to_string(b));
      }
    }
    const Vec p = detail::normalize(Vec(block.begin(), block.end()));
    std::copy(p.begin(), p.end(), out.begin() + static_cast<long>(layout.offsets[b]));
  }
  return out;
}

double lifted_normalize_lipschitz(const BlockLayout& layout) {
  double worst = 0.0;
  for (std::size_t b = 0; b < layout.num_blocks(); ++b) {
    worst = std::max(worst, std::sqrt(static_cast<double>(layout.block_size(b)) /
                                      layout.floors[b]));
  }
  return worst;
}

// ------------------------------------------------------- best responses

std::vector<Vec> leaf_coefficients(const GameTree& tree,
                                   std::span<const double> x) {
  const TreePasses passes = tree_passes(tree, x);
  const std::size_t n = tree.num_players();
  std::vector<Vec> out(n, Vec(tree.leaves().size()));
  for (std::size_t k = 0; k < tree.leaves().size(); ++k) {
    const std::size_t h = tree.leaves()[k];
    for (std::size_t i = 0; i < n; ++i) {
      out[i][k] = passes.reach[h * n + i] * tree.nodes()[h].payoffs[i];
    }
  }
  return out;
}

namespace {

// Bottom-up over one player's infosets. `local(j, seq_values)` returns the
// value assigned to infoset j given the accumulated per-sequence values.
template <class Local>
double infoset_dp(const GameTree& tree, std::size_t player, Vec seq_values,
                  double root_value, Local local) {
  const auto& order = tree.player_infosets(player);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t j = *it;
    const double v = local(j, seq_values);
    const auto& parent = tree.infoset(j).parent;
    if (parent) {
      seq_values[tree.infoset(parent->infoset).offset + parent->action] += v;
    } else {
      root_value += v;
    }
  }
  return root_value;
}

double block_max(const GameTree& tree, std::size_t j, const Vec& values) {
  const Infoset& info = tree.infoset(j);
  return *std::max_element(values.begin() + static_cast<long>(info.offset),
                           values.begin() + static_cast<long>(info.offset + info.num_actions));
}

}  // namespace

double best_response_value(const GameTree& tree, std::size_t player,
                           std::span<const double> leaf_weights) {
  if (leaf_weights.size() != tree.leaves().size()) {
    throw std::invalid_argument("best_response_value: one weight per leaf");
  }
  Vec seq(tree.dimension(), 0.0);
  double root = 0.0;
  for (std::size_t k = 0; k < tree.leaves().size(); ++k) {
    const auto& last = tree.last_sequence(tree.leaves()[k], player);
    if (last) {
      seq[tree.infoset(last->infoset).offset + last->action] += leaf_weights[k];
    } else {
      root += leaf_weights[k];
    }
  }
  return infoset_dp(tree, player, std::move(seq), root,
                    [&](std::size_t j, const Vec& s) { return block_max(tree, j, s); });
}

double Exploitability::max() const {
  return per_player.empty() ? 0.0 : *std::max_element(per_player.begin(), per_player.end());
}

double Exploitability::sum() const {
  double s = 0.0;
  for (double v : per_player) s += v;
  return s;
}

Exploitability exploitability(const GameTree& tree, std::span<const double> x) {
  const std::vector<Vec> coeffs = leaf_coefficients(tree, x);
  const Vec current = expected_values(tree, x);
  Exploitability out;
  for (std::size_t i = 0; i < tree.num_players(); ++i) {
    const double gap = best_response_value(tree, i, coeffs[i]) - current[i];
    out.per_player.push_back(tree.payoff_map().scale * gap);
  }
  return out;
}

SequenceRegretTracker::SequenceRegretTracker(const GameTree& tree)
    : tree_(&tree),
      leaf_weights_(tree.num_players(), Vec(tree.leaves().size(), 0.0)),
      realized_(tree.num_players(), 0.0),
      cf_regrets_(tree.dimension(), 0.0) {}

void SequenceRegretTracker::record(std::span<const double> x, double weight,
                                   std::span<const double> values) {
  const GameTree& tree = *tree_;
  const std::vector<Vec> coeffs = leaf_coefficients(tree, x);
  const Vec current = expected_values(tree, x);
  for (std::size_t i = 0; i < tree.num_players(); ++i) {
    for (std::size_t k = 0; k < coeffs[i].size(); ++k) {
      leaf_weights_[i][k] += weight * coeffs[i][k];
    }
    realized_[i] += weight * current[i];
  }
  const Vec h = values.empty() ? counterfactual_regret_operator(tree, x)
                               : counterfactual_regrets_from_values(tree, x, values);
  for (std::size_t k = 0; k < h.size(); ++k) cf_regrets_[k] += weight * h[k];
  total_weight_ += weight;
}

double SequenceRegretTracker::regret(std::size_t player) const {
  return best_response_value(*tree_, player, leaf_weights_[player]) - realized_[player];
}

double SequenceRegretTracker::cfr_bound(std::size_t player) const {
  const GameTree& tree = *tree_;
  // seq holds, per sequence, the summed bounds of the infosets below it.
  return infoset_dp(tree, player, Vec(tree.dimension(), 0.0), 0.0,
                    [&](std::size_t j, const Vec& s) {
                      return std::max(block_max(tree, j, cf_regrets_), 0.0) +
                             block_max(tree, j, s);
                    });
}

double SequenceRegretTracker::decomposed_regret(std::size_t player) const {
  const GameTree& tree = *tree_;
  return infoset_dp(tree, player, cf_regrets_, 0.0,
                    [&](std::size_t j, const Vec& s) { return block_max(tree, j, s); });
}

SequenceAverager::SequenceAverager(const GameTree& tree)
    : tree_(&tree),
      numerator_(tree.dimension(), 0.0),
      denominator_(tree.num_infosets(), 0.0) {}

void SequenceAverager::add(std::span<const double> x, double weight) {
  const Vec reach = own_reach(*tree_, x);
  for (std::size_t j = 0; j < tree_->num_infosets(); ++j) {
    const Infoset& info = tree_->infoset(j);
    const double w = weight * reach[j];
    for (std::size_t a = 0; a < info.num_actions; ++a) {
      numerator_[info.offset + a] += w * x[info.offset + a];
    }
    denominator_[j] += w;
  }
}

Vec SequenceAverager::average() const {
  Vec out(numerator_.size());
  for (std::size_t j = 0; j < tree_->num_infosets(); ++j) {
    const Infoset& info = tree_->infoset(j);
    double total = 0.0;
    for (std::size_t a = 0; a < info.num_actions; ++a) total += numerator_[info.offset + a];
    for (std::size_t a = 0; a < info.num_actions; ++a) {
      out[info.offset + a] = total > 0.0 ? numerator_[info.offset + a] / total
                                         : 1.0 / static_cast<double>(info.num_actions);
    }
  }
  return out;
}

// --------------------------------------------------------------- solvers

CfrState predictive_cfr_init(const GameTree& tree) {
  CfrState state;
  for (const Infoset& info : tree.infosets()) {
    state.infosets.push_back(AggregateState::initial(info.num_actions, 0.0));
  }
  return state;
}

namespace {

void check_cfr_state(const CfrState& state, const GameTree& tree) {
  if (state.infosets.size() != tree.num_infosets()) {
    throw std::invalid_argument("CFR state has the wrong number of infosets");
  }
  for (std::size_t j = 0; j < tree.num_infosets(); ++j) {
    if (state.infosets[j].size() != tree.infoset(j).num_actions) {
      throw std::invalid_argument("CFR state block " + std::to_string(j) +
                                  " has the wrong dimension");
    }
  }
}

}  // namespace

Vec cfr_strategy(const CfrState& state, const GameTree& tree) {
  check_cfr_state(state, tree);
  Vec x(tree.dimension());
  for (std::size_t j = 0; j < tree.num_infosets(); ++j) {
    const Strategy s = prm_plus_strategy(state.infosets[j]);
    std::copy(s.probs().begin(), s.probs().end(),
              x.begin() + static_cast<long>(tree.infoset(j).offset));
  }
  return x;
}

CfrState cfr_update_player(const CfrState& state, const GameTree& tree,
                           std::size_t player, std::span<const double> values) {
  check_cfr_state(state, tree);
  if (values.size() != tree.dimension()) {
    throw std::invalid_argument("counterfactual values: dimension mismatch");
  }
  CfrState next = state;
  for (std::size_t j : tree.player_infosets(player)) {
    const Infoset& info = tree.infoset(j);
    LossVector loss{Vec(info.num_actions)};
    for (std::size_t a = 0; a < info.num_actions; ++a) {
      loss.values[a] = -values[info.offset + a];
    }
    next.infosets[j] = prm_plus_step(state.infosets[j], loss).state;
  }
  return next;
}

CfrRound predictive_cfr_round(const CfrState& state, const GameTree& tree) {
  CfrRound out;
  out.strategy = cfr_strategy(state, tree);
  out.values = counterfactual_values(tree, out.strategy);
  out.state = state;
  for (std::size_t i = 0; i < tree.num_players(); ++i) {
    out.state = cfr_update_player(out.state, tree, i, out.values);
  }
  return out;
}

double efg_lipschitz_bound(const GameTree& tree, const BlockLayout& layout) {
  return std::sqrt(2.0 * static_cast<double>(tree.dimension())) *
         lifted_normalize_lipschitz(layout);
}

GameOperator make_efg_operator(const GameTree& tree, double floor) {
  GameOperator op;
  op.layout = tree.layout(floor);
  op.lipschitz = efg_lipschitz_bound(tree, op.layout);
  op.evaluate = [tree, layout = op.layout](std::span<const double> z) {
    Vec h = counterfactual_regret_operator(tree, lifted_normalize(z, layout));
    for (double& v : h) v = -v;
    return h;
  };
  return op;
}

LiftedRound clairvoyant_cfr_round(std::span<const double> z_prev,
                                  const GameOperator& op, double eta) {
  return exrm_round(z_prev, op, eta);
}

LiftedRound clairvoyant_cfr_round(std::span<const double> z_prev,
                                  const GameTree& tree, double eta) {
  return exrm_round(z_prev, make_efg_operator(tree), eta);
}

}  // namespace rmplus
