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

#ifndef LOOPY_DSL_HPP
#define LOOPY_DSL_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "loopy/graph.hpp"
#include "loopy/strategy.hpp"

namespace loopy {

/*
 * Line-oriented game description:
 *
 *   v <id>                 declare a vertex
 *   e <src> <dst>          edge (both endpoints must be declared somewhere)
 *   nimheap <prefix> <r>   Nim-heap prefix:0..prefix:r
 *   fig2 <imax>            the spine family u_0..u_imax with heaps G<i>, H<i>
 *   fan <n>                root u over Nim-heaps of sizes 0..n
 *   tokens <id>...         token placements (repeat an id for several tokens)
 *
 * '#' starts a comment; blank lines are ignored; repeated edges are merged.
 */
struct Declaration {
    enum class Kind { Vertex, Edge, NimHeap, Fig2, Fan, Tokens };
    Kind kind;
    std::size_t line;
    std::vector<std::string> names;
    std::size_t number = 0;  // NimHeap size, Fig2 i_max, Fan n
};

struct GraphSpec {
    std::vector<Declaration> declarations;
};

/// Generator arguments above these are rejected as malformed.
inline constexpr std::size_t kMaxHeapSize = 2000;
inline constexpr std::size_t kMaxFig2 = 200;
inline constexpr std::size_t kMaxFan = 200;

/// Throws ParseError carrying the offending line number.
GraphSpec parse_spec(std::string_view text);

struct Game {
    GameGraph graph;
    Position tokens;
};

/// Builds the graph and token position. Undeclared or duplicate vertices are
/// reported as ParseError at the line that references them.
Game expand(const GraphSpec& spec);

/// Parses a game given either as DSL text or as the JSON export.
Game load_game(std::string_view text);

} // namespace loopy

#endif
