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

#ifndef LOOPY_GRAPH_HPP
#define LOOPY_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loopy {

/// Dense vertex handle. Indices follow the lexicographic order of vertex ids.
using VertexIndex = std::uint32_t;

using Edge = std::pair<std::string, std::string>;

/// True iff `id` is a nonempty string over [A-Za-z0-9_.:-].
bool is_valid_vertex_id(std::string_view id);

/**
 * Immutable finite digraph of game positions.
 *
 * Vertices are sorted lexicographically by id and addressed by their rank;
 * follower lists are sorted and duplicate-free. Self-loops are allowed.
 */
class GameGraph {
  public:
    GameGraph() = default;

    std::size_t size() const noexcept { return ids_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    const std::string& id(VertexIndex v) const { return ids_.at(v); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }

    std::optional<VertexIndex> find(std::string_view id) const;
    /// Like find, but throws GraphError for an unknown id.
    VertexIndex index_of(std::string_view id) const;

    std::span<const VertexIndex> followers(VertexIndex v) const { return followers_.at(v); }
    bool is_leaf(VertexIndex v) const { return followers_.at(v).empty(); }
    bool has_edge(VertexIndex from, VertexIndex to) const;

    /// Reverse adjacency, built on demand.
    std::vector<std::vector<VertexIndex>> predecessor_lists() const;

    /// All edges as id pairs, ordered by (source, target).
    std::vector<Edge> edges() const;

    friend bool operator==(const GameGraph&, const GameGraph&) = default;

  private:
    friend GameGraph build_graph(std::vector<std::string>, const std::vector<Edge>&);

    std::vector<std::string> ids_;
    std::vector<std::vector<VertexIndex>> followers_;
    std::size_t edge_count_ = 0;
};

/// Canonical graph from declarations. Throws GraphError on an invalid or
/// duplicate vertex, or on an edge with an undeclared endpoint.
GameGraph build_graph(std::vector<std::string> vertices, const std::vector<Edge>& edges);

/**
 * Accumulates vertex and edge declarations, including whole generated
 * families, and produces the canonical graph. Duplicate edges are merged;
 * duplicate vertices are reported by build().
 */
class GraphBuilder {
  public:
    GraphBuilder& add_vertex(std::string id);
    GraphBuilder& add_edge(std::string from, std::string to);

    GraphBuilder& add_nim_heap(const std::string& prefix, std::size_t size);
    GraphBuilder& add_fig2_family(std::size_t i_max);
    GraphBuilder& add_unbounded_fan(std::size_t n);

    GameGraph build() const { return build_graph(vertices_, edges_); }

  private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
};

/// Vertex `prefix:j` of a Nim-heap.
std::string heap_vertex(const std::string& prefix, std::size_t j);

/// Nim-heap of size r: vertices prefix:0..prefix:r, edge (prefix:j, prefix:i) for all i < j.
GameGraph nim_heap(const std::string& prefix, std::size_t r);

/*
 * The locally path-bounded family with a horizontal spine u_0, u_1, ...
 *
 *   u_i -> u_{i-1}                        (i >= 1)
 *   u_i -> top(G_i)    G_i = Nim-heap "G<i>" of size floor((4i+8)/3)
 *   u_i -> top(H_i)    H_i = Nim-heap "H<i>" of size floor((i+2)/3)
 *   depth-i vertex of G_i   -> top(G_i)   (cycle of length i+1)
 *   depth-(i+1) vertex of G_i -> u_i      (cycle of length i+3)
 *
 * Depth is counted from the top along the heap's adjacent edges.
 */
std::size_t fig2_down_heap_size(std::size_t i);
std::size_t fig2_up_heap_size(std::size_t i);
std::string fig2_spine_vertex(std::size_t i);
std::string fig2_down_heap_prefix(std::size_t i);
std::string fig2_up_heap_prefix(std::size_t i);
/// Vertex of G_i at the given depth below its top.
std::string fig2_down_heap_vertex(std::size_t i, std::size_t depth);

GameGraph fig2_family(std::size_t i_max);

/// Root "u" with followers u_0..u_n, u_i being the top "u_<i>:<i>" of a Nim-heap of size i.
std::string fan_root();
std::string fan_heap_prefix(std::size_t i);
GameGraph unbounded_fan(std::size_t n);

/// Induced subgraph on everything reachable from `roots`. Throws
/// BudgetExceeded when it would hold more than `budget` vertices.
GameGraph reachable_subgraph(const GameGraph& g, std::span<const std::string> roots, std::size_t budget);

inline constexpr std::uint64_t kDefaultPathBudget = 50'000'000;

/// Longest simple path (in edges) starting at `start`. Exponential in the
/// size of the largest strongly connected component; throws BudgetExceeded
/// once more than `budget` DFS expansions have been made.
std::size_t longest_path(const GameGraph& g, VertexIndex start, std::uint64_t budget = kDefaultPathBudget);

struct PathBoundReport {
    std::vector<std::size_t> longest;  // per vertex
    std::size_t bound = 0;             // max over all vertices
};

PathBoundReport path_bounds(const GameGraph& g, std::uint64_t budget = kDefaultPathBudget);

/// Strongly connected components, each sorted; components are emitted so that
/// edges only lead from later components to earlier ones (sinks first).
std::vector<std::vector<VertexIndex>> strongly_connected_components(const GameGraph& g);

bool is_acyclic(const GameGraph& g);

} // namespace loopy

#endif
