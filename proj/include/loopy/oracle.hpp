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

#ifndef LOOPY_ORACLE_HPP
#define LOOPY_ORACLE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "loopy/graph.hpp"
#include "loopy/strategy.hpp"

namespace loopy {

/// Explicit state space of the token game: one state per reachable token multiset.
struct StateGraph {
    std::vector<Position> states;
    std::vector<std::vector<std::uint32_t>> successors;  // deduplicated, sorted
};

/// Every position reachable from `start` by moving one token along one edge at
/// a time. Throws BudgetExceeded beyond `budget` states.
StateGraph build_state_graph(const GameGraph& g, const Position& start, std::size_t budget);

/// Order in which newly decided states are propagated. The labels do not depend on it.
enum class PropagationOrder { Fifo, Lifo, Shuffled };

struct OracleOptions {
    PropagationOrder order = PropagationOrder::Fifo;
    std::uint64_t seed = 0;  // Shuffled only
};

/**
 * Retrograde analysis. A stuck state is P; a state with a P successor is N;
 * a state all of whose successors are N is P; what remains is D.
 */
std::vector<Outcome> retrograde(const StateGraph& states, OracleOptions options = {});

std::map<Position, Outcome> oracle_classify(const GameGraph& g, const Position& start, std::size_t budget,
                                            OracleOptions options = {});

/// Classic Sprague-Grundy values by memoized mex recursion. Throws GraphError on a cycle.
std::vector<Nimber> classic_sg(const GameGraph& g);

/**
 * Reproducible random digraph on vertices v00, v01, ... Each vertex is a leaf
 * with probability `leaf_fraction`; every other vertex gets each possible
 * edge (self-loops included) with probability `edge_density`, so it may
 * still end up a leaf. Requires 1 <= n <= 1000 and both probabilities in [0, 1].
 */
GameGraph random_graph(std::uint64_t seed, std::size_t n_vertices, double edge_density, double leaf_fraction);

/// Like random_graph, but edges only go from higher-numbered to lower-numbered vertices.
GameGraph random_dag(std::uint64_t seed, std::size_t n_vertices, double edge_density);

} // namespace loopy

#endif
