/*
 * Copyright 2026 The loopy authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LOOPY_CLI_HPP
#define LOOPY_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace loopy {

/// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/**
 * Runs one command line invocation. `args` excludes the program name.
 * A file argument of "-" reads the game from `in` (play mode then takes its
 * moves from the remaining input).
 */
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace loopy

#endif
