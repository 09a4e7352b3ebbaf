// Copyright 2026 The qfdiv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFDIV_TOOLS_CLI_HPP
#define QFDIV_TOOLS_CLI_HPP

#include <iosfwd>

namespace qfdiv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Entry point of the `qfdiv` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfdiv::cli

#endif  // QFDIV_TOOLS_CLI_HPP
