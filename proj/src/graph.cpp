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

#include "loopy/graph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "loopy/errors.hpp"

namespace loopy {

bool is_valid_vertex_id(std::string_view id)
{
    if (id.empty()) return false;
    return std::all_of(id.begin(), id.end(), [](char ch) {
        return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
               ch == '_' || ch == '.' || ch == ':' || ch == '-';
    });
}

std::optional<VertexIndex> GameGraph::find(std::string_view id) const
{
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<VertexIndex>(it - ids_.begin());
}

VertexIndex GameGraph::index_of(std::string_view id) const
{
    auto v = find(id);
    if (!v) throw GraphError("unknown vertex '" + std::string(id) + "'");
    return *v;
}

bool GameGraph::has_edge(VertexIndex from, VertexIndex to) const
{
    const auto& f = followers_.at(from);
    return std::binary_search(f.begin(), f.end(), to);
}

std::vector<std::vector<VertexIndex>> GameGraph::predecessor_lists() const
{
    std::vector<std::vector<VertexIndex>> preds(size());
    for (VertexIndex u = 0; u < size(); ++u) {
        for (VertexIndex v : followers_[u]) preds[v].push_back(u);
    }
    return preds;
}

std::vector<Edge> GameGraph::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexIndex u = 0; u < size(); ++u) {
        for (VertexIndex v : followers_[u]) out.emplace_back(ids_[u], ids_[v]);
    }
    return out;
}

GameGraph build_graph(std::vector<std::string> vertices, const std::vector<Edge>& edges)
{
    for (const auto& id : vertices) {
        if (!is_valid_vertex_id(id)) throw GraphError("invalid vertex id '" + id + "'");
    }
    std::sort(vertices.begin(), vertices.end());
    auto dup = std::adjacent_find(vertices.begin(), vertices.end());
    if (dup != vertices.end()) throw GraphError("duplicate vertex declaration '" + *dup + "'");

    GameGraph g;
    g.ids_ = std::move(vertices);
    g.followers_.resize(g.ids_.size());
    for (const auto& [from, to] : edges) {
        auto u = g.find(from);
        if (!u) throw GraphError("edge " + from + " -> " + to + ": undeclared endpoint '" + from + "'");
        auto v = g.find(to);
        if (!v) throw GraphError("edge " + from + " -> " + to + ": undeclared endpoint '" + to + "'");
        g.followers_[*u].push_back(*v);
    }
    for (auto& f : g.followers_) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        g.edge_count_ += f.size();
    }
    return g;
}

GraphBuilder& GraphBuilder::add_vertex(std::string id)
{
    vertices_.push_back(std::move(id));
    return *this;
}

GraphBuilder& GraphBuilder::add_edge(std::string from, std::string to)
{
    edges_.emplace_back(std::move(from), std::move(to));
    return *this;
}

std::string heap_vertex(const std::string& prefix, std::size_t j)
{
    return prefix + ":" + std::to_string(j);
}

GraphBuilder& GraphBuilder::add_nim_heap(const std::string& prefix, std::size_t size)
{
    for (std::size_t j = 0; j <= size; ++j) {
        add_vertex(heap_vertex(prefix, j));
        for (std::size_t i = 0; i < j; ++i) add_edge(heap_vertex(prefix, j), heap_vertex(prefix, i));
    }
    return *this;
}

std::size_t fig2_down_heap_size(std::size_t i) { return (4 * i + 8) / 3; }
std::size_t fig2_up_heap_size(std::size_t i) { return (i + 2) / 3; }
std::string fig2_spine_vertex(std::size_t i) { return "u_" + std::to_string(i); }
std::string fig2_down_heap_prefix(std::size_t i) { return "G" + std::to_string(i); }
std::string fig2_up_heap_prefix(std::size_t i) { return "H" + std::to_string(i); }

std::string fig2_down_heap_vertex(std::size_t i, std::size_t depth)
{
    const std::size_t r = fig2_down_heap_size(i);
    if (depth > r) throw PreconditionError("depth " + std::to_string(depth) + " exceeds heap size");
    return heap_vertex(fig2_down_heap_prefix(i), r - depth);
}

GraphBuilder& GraphBuilder::add_fig2_family(std::size_t i_max)
{
    for (std::size_t i = 0; i <= i_max; ++i) {
        const std::string u = fig2_spine_vertex(i);
        const std::size_t down = fig2_down_heap_size(i);
        const std::size_t up = fig2_up_heap_size(i);
        // the back edge to u_i leaves from depth i+1
        if (down < i + 1) throw GraphError("fig2: heap G" + std::to_string(i) + " too small for its back edges");

        add_vertex(u);
        if (i > 0) add_edge(u, fig2_spine_vertex(i - 1));

        add_nim_heap(fig2_down_heap_prefix(i), down);
        const std::string top = fig2_down_heap_vertex(i, 0);
        add_edge(u, top);
        add_edge(fig2_down_heap_vertex(i, i), top);
        add_edge(fig2_down_heap_vertex(i, i + 1), u);

        add_nim_heap(fig2_up_heap_prefix(i), up);
        add_edge(u, heap_vertex(fig2_up_heap_prefix(i), up));
    }
    return *this;
}

std::string fan_root() { return "u"; }
std::string fan_heap_prefix(std::size_t i) { return "u_" + std::to_string(i); }

GraphBuilder& GraphBuilder::add_unbounded_fan(std::size_t n)
{
    add_vertex(fan_root());
    for (std::size_t i = 0; i <= n; ++i) {
        add_nim_heap(fan_heap_prefix(i), i);
        add_edge(fan_root(), heap_vertex(fan_heap_prefix(i), i));
    }
    return *this;
}

GameGraph nim_heap(const std::string& prefix, std::size_t r)
{
    return GraphBuilder().add_nim_heap(prefix, r).build();
}

GameGraph fig2_family(std::size_t i_max)
{
    return GraphBuilder().add_fig2_family(i_max).build();
}

GameGraph unbounded_fan(std::size_t n)
{
    return GraphBuilder().add_unbounded_fan(n).build();
}

GameGraph reachable_subgraph(const GameGraph& g, std::span<const std::string> roots, std::size_t budget)
{
    std::vector<bool> seen(g.size(), false);
    std::deque<VertexIndex> queue;
    std::size_t count = 0;
    auto visit = [&](VertexIndex v) {
        if (seen[v]) return;
        seen[v] = true;
        if (++count > budget) {
            throw BudgetExceeded("reachable subgraph exceeds budget of " + std::to_string(budget) + " vertices");
        }
        queue.push_back(v);
    };
    for (const auto& r : roots) visit(g.index_of(r));
    while (!queue.empty()) {
        VertexIndex u = queue.front();
        queue.pop_front();
        for (VertexIndex v : g.followers(u)) visit(v);
    }

    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    for (VertexIndex u = 0; u < g.size(); ++u) {
        if (!seen[u]) continue;
        vertices.push_back(g.id(u));
        for (VertexIndex v : g.followers(u)) edges.emplace_back(g.id(u), g.id(v));
    }
    return build_graph(std::move(vertices), edges);
}

namespace {

constexpr std::uint32_t kUnvisited = UINT32_MAX;

/// Iterative Tarjan over the part of g reachable from `roots`.
std::vector<std::vector<VertexIndex>> tarjan(const GameGraph& g, std::span<const VertexIndex> roots)
{
    std::vector<std::uint32_t> index(g.size(), kUnvisited), low(g.size(), 0);
    std::vector<bool> on_stack(g.size(), false);
    std::vector<VertexIndex> stack;
    std::vector<std::pair<VertexIndex, std::size_t>> call;
    std::vector<std::vector<VertexIndex>> components;
    std::uint32_t next = 0;

    for (VertexIndex root : roots) {
        if (index[root] != kUnvisited) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            auto& [u, pos] = call.back();
            auto f = g.followers(u);
            if (pos < f.size()) {
                VertexIndex v = f[pos++];
                if (index[v] == kUnvisited) {
                    index[v] = low[v] = next++;
                    stack.push_back(v);
                    on_stack[v] = true;
                    call.emplace_back(v, 0);
                } else if (on_stack[v]) {
                    low[u] = std::min(low[u], index[v]);
                }
                continue;
            }
            const VertexIndex done = u;
            call.pop_back();
            if (!call.empty()) {
                VertexIndex parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                std::vector<VertexIndex> comp;
                VertexIndex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
        }
    }
    return components;
}

/*
 * A simple path leaving a strongly connected component never returns to it,
 * so the longest path from v is: some simple path inside v's component ending
 * at x, then optionally one edge x->y out of the component followed by the
 * longest path from y. Only the in-component part needs enumeration.
 */
class LongestPaths {
  public:
    LongestPaths(const GameGraph& g, std::uint64_t budget)
        : g_(g), budget_(budget), longest_(g.size(), 0), component_(g.size(), kUnvisited), on_path_(g.size(), false)
    {
    }

    void solve(std::span<const VertexIndex> roots)
    {
        auto components = tarjan(g_, roots);
        for (std::uint32_t c = 0; c < components.size(); ++c) {
            for (VertexIndex v : components[c]) component_[v] = c;
        }
        std::vector<std::size_t> exit(g_.size(), 0);
        for (std::uint32_t c = 0; c < components.size(); ++c) {
            for (VertexIndex x : components[c]) {
                for (VertexIndex y : g_.followers(x)) {
                    if (component_[y] != c) exit[x] = std::max(exit[x], 1 + longest_[y]);
                }
            }
            for (VertexIndex v : components[c]) longest_[v] = within_component(v, c, exit);
        }
    }

    std::size_t at(VertexIndex v) const { return longest_[v]; }

  private:
    std::size_t within_component(VertexIndex start, std::uint32_t c, const std::vector<std::size_t>& exit)
    {
        std::size_t best = exit[start];
        std::vector<std::pair<VertexIndex, std::size_t>> stack{{start, 0}};
        on_path_[start] = true;
        while (!stack.empty()) {
            auto& [u, pos] = stack.back();
            auto f = g_.followers(u);
            while (pos < f.size() && (component_[f[pos]] != c || on_path_[f[pos]])) ++pos;
            if (pos == f.size()) {
                on_path_[u] = false;
                stack.pop_back();
                continue;
            }
            VertexIndex v = f[pos++];
            if (++expansions_ > budget_) {
                throw BudgetExceeded("longest path search exceeded " + std::to_string(budget_) + " expansions");
            }
            on_path_[v] = true;
            stack.emplace_back(v, 0);
            best = std::max(best, (stack.size() - 1) + exit[v]);
        }
        return best;
    }

    const GameGraph& g_;
    std::uint64_t budget_;
    std::uint64_t expansions_ = 0;
    std::vector<std::size_t> longest_;
    std::vector<std::uint32_t> component_;
    std::vector<bool> on_path_;
};

} // namespace

std::size_t longest_path(const GameGraph& g, VertexIndex start, std::uint64_t budget)
{
    if (start >= g.size()) throw PreconditionError("longest_path: vertex index out of range");
    LongestPaths lp(g, budget);
    const VertexIndex roots[] = {start};
    lp.solve(roots);
    return lp.at(start);
}

PathBoundReport path_bounds(const GameGraph& g, std::uint64_t budget)
{
    LongestPaths lp(g, budget);
    std::vector<VertexIndex> all(g.size());
    for (VertexIndex v = 0; v < g.size(); ++v) all[v] = v;
    lp.solve(all);

    PathBoundReport report;
    report.longest.resize(g.size());
    for (VertexIndex v = 0; v < g.size(); ++v) {
        report.longest[v] = lp.at(v);
        report.bound = std::max(report.bound, report.longest[v]);
    }
    return report;
}

std::vector<std::vector<VertexIndex>> strongly_connected_components(const GameGraph& g)
{
    std::vector<VertexIndex> all(g.size());
    for (VertexIndex v = 0; v < g.size(); ++v) all[v] = v;
    return tarjan(g, all);
}

bool is_acyclic(const GameGraph& g)
{
    for (VertexIndex v = 0; v < g.size(); ++v) {
        if (g.has_edge(v, v)) return false;
    }
    for (const auto& comp : strongly_connected_components(g)) {
        if (comp.size() > 1) return false;
    }
    return true;
}

} // namespace loopy
