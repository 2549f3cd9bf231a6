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

#ifndef RMPLUS_GAME_IO_H_
#define RMPLUS_GAME_IO_H_

// Plain-text game files. Grammar (tokens are whitespace separated, `#`
// starts a comment running to end of line):
//
//   matrix                      nfg
//   <d1> <d2>                   <n>
//   <d1 * d2 entries>           <d_1> ... <d_n>
//                               <prod d entries for player 1>
//                               ...
//                               <prod d entries for player n>
//
// Entries are row-major; in the nfg form the last player's action varies
// fastest. Writers emit 17 significant digits, so a round trip is exact.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rmplus/games.h"

namespace rmplus {

class GameFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string game_to_text(const GameSpec& game);
GameSpec parse_game(std::string_view text);

GameSpec load_game(const std::filesystem::path& path);
void save_game(const GameSpec& game, const std::filesystem::path& path);

// Splits on whitespace after removing `#` comments.
std::vector<std::string> tokenize(std::string_view text);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace rmplus

#endif  // RMPLUS_GAME_IO_H_
