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

#ifndef LOOPY_ERRORS_HPP
#define LOOPY_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loopy {

/**
 * Base class of every domain error raised by the library.
 * The command line front-end maps these to exit code 1.
 */
class GameError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph: bad identifier, duplicate declaration, undeclared endpoint, cycle where none is allowed.
class GraphError : public GameError {
  public:
    using GameError::GameError;
};

/// A materialization or search exceeded its configured cap.
class BudgetExceeded : public GameError {
  public:
    using GameError::GameError;
};

/// A caller violated an operation's contract.
class PreconditionError : public GameError {
  public:
    using GameError::GameError;
};

class ParseError : public GameError {
  public:
    ParseError(std::size_t line, const std::string& message)
        : GameError("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

} // namespace loopy

#endif
