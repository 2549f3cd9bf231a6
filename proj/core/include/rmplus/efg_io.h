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

#ifndef RMPLUS_EFG_IO_H_
#define RMPLUS_EFG_IO_H_

// Line-oriented tree files. `#` starts a comment; blank lines are ignored.
//
//   efg 1
//   players <n>
//   payoff_map <scale> <offset_1> ... <offset_n>      (optional)
//   infoset <id> player <p> actions <k> [<label>]
//   node <id> chance <child> <prob> [<child> <prob> ...]
//   node <id> decision <infoset> <child> [<child> ...]
//   node <id> leaf <v_1> ... <v_n>
//
// Infoset and node ids must be 0, 1, 2, ... in order of appearance; node 0
// is the root and every child id exceeds its parent's.

#include <filesystem>
#include <string>
#include <string_view>

#include "rmplus/efg.h"
#include "rmplus/game_io.h"

namespace rmplus {

std::string tree_to_text(const GameTree& tree);
GameTree parse_tree(std::string_view text);
GameTree load_tree(const std::filesystem::path& path);
void save_tree(const GameTree& tree, const std::filesystem::path& path);

// True when the file's first token is `efg`.
bool looks_like_tree_file(const std::filesystem::path& path);

}  // namespace rmplus

#endif  // RMPLUS_EFG_IO_H_
