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

#ifndef RMPLUS_TOOLS_CLI_H_
#define RMPLUS_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "rmplus/efg.h"
#include "rmplus/games.h"

namespace rmplus::tools {

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2, kNumericalError = 3 };

// args excludes the program name.
int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

using AnyGame = std::variant<GameSpec, GameTree>;

// Built-in names or a game file:
//   hard3x3 | zero:<d1>x<d2> | random:<d1>x<d2>[:seed] | nfg:<d1>x...x<dn>[:seed]
//   | kuhn:<ranks> | liars:<players> | <path>
// Random instances without an explicit seed use `default_seed`.
// Throws ConfigError for unknown names and missing files.
AnyGame resolve_game(const std::string& spec, std::uint64_t default_seed);

// Applies the output-directory override to relative paths.
std::string output_path(const std::string& path);

}  // namespace rmplus::tools

#endif  // RMPLUS_TOOLS_CLI_H_
