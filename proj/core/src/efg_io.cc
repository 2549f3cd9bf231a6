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

#include "rmplus/efg_io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace rmplus {

namespace {

std::size_t to_index(const std::string& w, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size()) {
    throw GameFormatError(fmt::format("line {}: expected an integer, got '{}'", line, w));
  }
  return v;
}

double to_number(const std::string& w, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(w, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != w.size()) {
    throw GameFormatError(fmt::format("line {}: expected a number, got '{}'", line, w));
  }
  return v;
}

}  // namespace

std::string tree_to_text(const GameTree& tree) {
  std::string out = "efg 1\n";
  out += fmt::format("players {}\n", tree.num_players());
  const PayoffMap& map = tree.payoff_map();
  out += fmt::format("payoff_map {:.17g}", map.scale);
  for (std::size_t i = 0; i < tree.num_players(); ++i) {
    out += fmt::format(" {:.17g}", map.offsets.empty() ? 0.0 : map.offsets[i]);
  }
  out += '\n';
  for (std::size_t j = 0; j < tree.num_infosets(); ++j) {
    const Infoset& info = tree.infoset(j);
    out += fmt::format("infoset {} player {} actions {}", j, info.player, info.num_actions);
    if (!info.label.empty()) out += ' ' + info.label;
    out += '\n';
  }
  for (std::size_t h = 0; h < tree.num_nodes(); ++h) {
    const TreeNode& node = tree.nodes()[h];
    out += fmt::format("node {}", h);
    switch (node.kind) {
      case NodeKind::kChance:
        out += " chance";
        for (std::size_t k = 0; k < node.children.size(); ++k) {
          out += fmt::format(" {} {:.17g}", node.children[k], node.chance_probs[k]);
        }
        break;
      case NodeKind::kDecision:
        out += fmt::format(" decision {}", node.infoset);
        for (std::size_t c : node.children) out += fmt::format(" {}", c);
        break;
      case NodeKind::kLeaf:
        out += " leaf";
        for (double v : node.payoffs) out += fmt::format(" {:.17g}", v);
        break;
    }
    out += '\n';
  }
  return out;
}

GameTree parse_tree(std::string_view text) {
  std::size_t players = 0;
  bool header = false;
  PayoffMap map;
  std::vector<Infoset> infosets;
  std::vector<TreeNode> nodes;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::vector<std::string> tok = tokenize(text.substr(start, end - start));
    start = end + 1;
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() < n) {
        throw GameFormatError(fmt::format("line {}: too few fields for '{}'", line_no, key));
      }
    };
    if (!header) {
      if (key != "efg" || tok.size() != 2 || tok[1] != "1") {
        throw GameFormatError("tree files must start with 'efg 1'");
      }
      header = true;
    } else if (key == "players") {
      need(2);
      players = to_index(tok[1], line_no);
    } else if (key == "payoff_map") {
      need(2);
      map.scale = to_number(tok[1], line_no);
      map.offsets.clear();
      for (std::size_t k = 2; k < tok.size(); ++k) {
        map.offsets.push_back(to_number(tok[k], line_no));
      }
    } else if (key == "infoset") {
      need(6);
      if (to_index(tok[1], line_no) != infosets.size() || tok[2] != "player" ||
          tok[4] != "actions") {
        throw GameFormatError(fmt::format("line {}: malformed infoset line", line_no));
      }
      Infoset info;
      info.player = to_index(tok[3], line_no);
      info.num_actions = to_index(tok[5], line_no);
      if (tok.size() > 6) info.label = tok[6];
      infosets.push_back(std::move(info));
    } else if (key == "node") {
      need(3);
      if (to_index(tok[1], line_no) != nodes.size()) {
        throw GameFormatError(fmt::format("line {}: node ids must be consecutive", line_no));
      }
      TreeNode node;
      const std::string& kind = tok[2];
      if (kind == "chance") {
        node.kind = NodeKind::kChance;
        if ((tok.size() - 3) % 2 != 0) {
          throw GameFormatError(fmt::format("line {}: chance entries come in pairs", line_no));
        }
        for (std::size_t k = 3; k < tok.size(); k += 2) {
          node.children.push_back(to_index(tok[k], line_no));
          node.chance_probs.push_back(to_number(tok[k + 1], line_no));
        }
      } else if (kind == "decision") {
        need(4);
        node.kind = NodeKind::kDecision;
        node.infoset = to_index(tok[3], line_no);
        for (std::size_t k = 4; k < tok.size(); ++k) {
          node.children.push_back(to_index(tok[k], line_no));
        }
      } else if (kind == "leaf") {
        node.kind = NodeKind::kLeaf;
        for (std::size_t k = 3; k < tok.size(); ++k) {
          node.payoffs.push_back(to_number(tok[k], line_no));
        }
      } else {
        throw GameFormatError(fmt::format("line {}: unknown node kind '{}'", line_no, kind));
      }
      nodes.push_back(std::move(node));
    } else {
      throw GameFormatError(fmt::format("line {}: unknown directive '{}'", line_no, key));
    }
    if (end == text.size()) break;
  }
  if (!header) throw GameFormatError("empty tree file");
  try {
    return GameTree(players, std::move(infosets), std::move(nodes), std::move(map));
  } catch (const GameFormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw GameFormatError(e.what());
  }
}

GameTree load_tree(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw GameFormatError("cannot open tree file " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_tree(buffer.str());
}

void save_tree(const GameTree& tree, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << tree_to_text(tree);
}

bool looks_like_tree_file(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) return false;
  std::ostringstream buffer;
  buffer << file.rdbuf();
  const std::vector<std::string> tok = tokenize(buffer.str());
  return !tok.empty() && tok.front() == "efg";
}

}  // namespace rmplus
