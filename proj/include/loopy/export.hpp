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

#ifndef LOOPY_EXPORT_HPP
#define LOOPY_EXPORT_HPP

#include <string>
#include <string_view>

#include "loopy/dsl.hpp"
#include "loopy/gamma.hpp"
#include "loopy/graph.hpp"

namespace loopy {

enum class ExportFormat { Dot, Json };

/**
 * DOT: one node per vertex, labeled with its rendered gamma value when a
 * labeling is given (the id goes to xlabel). JSON: vertices, edges, tokens,
 * and with a labeling gamma (numbers, or "inf(...)" strings) and counter.
 */
std::string export_graph(const GameGraph& g, const Labeling* labeling, ExportFormat format,
                         const Position* tokens = nullptr);

/// Reads the JSON export back. gamma/counter fields are ignored. Throws ParseError.
Game parse_json_game(std::string_view text);

} // namespace loopy

#endif
