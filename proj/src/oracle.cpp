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

#include "loopy/oracle.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <cstdio>

#include "loopy/errors.hpp"

namespace loopy {

StateGraph build_state_graph(const GameGraph& g, const Position& start, std::size_t budget)
{
    for (VertexIndex v : start.tokens()) {
        if (v >= g.size()) throw GraphError("token on unknown vertex index " + std::to_string(v));
    }
    StateGraph sg;
    std::map<Position, std::uint32_t> index;
    auto intern = [&](const Position& p) -> std::uint32_t {
        auto [it, fresh] = index.try_emplace(p, static_cast<std::uint32_t>(sg.states.size()));
        if (fresh) {
            if (sg.states.size() >= budget) {
                throw BudgetExceeded("state space exceeds budget of " + std::to_string(budget) + " states");
            }
            sg.states.push_back(p);
            sg.successors.emplace_back();
        }
        return it->second;
    };

    intern(start);
    for (std::uint32_t s = 0; s < sg.states.size(); ++s) {
        std::vector<std::uint32_t> next;
        for (auto [from, to] : legal_moves(g, sg.states[s])) {
            // copy: intern may grow sg.states
            Position p = sg.states[s].moved(from, to);
            next.push_back(intern(p));
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        sg.successors[s] = std::move(next);
    }
    return sg;
}

std::vector<Outcome> retrograde(const StateGraph& states, OracleOptions options)
{
    const std::size_t n = states.states.size();
    std::vector<std::vector<std::uint32_t>> preds(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        for (std::uint32_t t : states.successors[s]) preds[t].push_back(s);
    }

    std::vector<std::optional<Outcome>> label(n);
    std::vector<std::size_t> undecided(n);
    std::deque<std::uint32_t> work;
    std::mt19937_64 rng(options.seed);

    auto decide = [&](std::uint32_t s, Outcome o) {
        label[s] = o;
        if (options.order == PropagationOrder::Shuffled && !work.empty()) {
            work.insert(work.begin() + static_cast<std::ptrdiff_t>(rng() % (work.size() + 1)), s);
        } else {
            work.push_back(s);
        }
    };

    for (std::uint32_t s = 0; s < n; ++s) {
        undecided[s] = states.successors[s].size();
        if (undecided[s] == 0) decide(s, Outcome::P);
    }

    while (!work.empty()) {
        std::uint32_t t;
        if (options.order == PropagationOrder::Lifo) {
            t = work.back();
            work.pop_back();
        } else {
            t = work.front();
            work.pop_front();
        }
        for (std::uint32_t s : preds[t]) {
            if (label[s]) continue;
            if (*label[t] == Outcome::P) {
                decide(s, Outcome::N);
            } else if (--undecided[s] == 0) {
                decide(s, Outcome::P);
            }
        }
    }

    std::vector<Outcome> out(n);
    for (std::uint32_t s = 0; s < n; ++s) out[s] = label[s].value_or(Outcome::D);
    return out;
}

std::map<Position, Outcome> oracle_classify(const GameGraph& g, const Position& start, std::size_t budget,
                                            OracleOptions options)
{
    const StateGraph sg = build_state_graph(g, start, budget);
    const auto labels = retrograde(sg, options);
    std::map<Position, Outcome> out;
    for (std::size_t s = 0; s < sg.states.size(); ++s) out.emplace(sg.states[s], labels[s]);
    return out;
}

std::vector<Nimber> classic_sg(const GameGraph& g)
{
    enum class Mark { New, Active, Done };
    std::vector<Mark> mark(g.size(), Mark::New);
    std::vector<Nimber> value(g.size(), 0);

    for (VertexIndex root = 0; root < g.size(); ++root) {
        if (mark[root] != Mark::New) continue;
        std::vector<std::pair<VertexIndex, std::size_t>> stack{{root, 0}};
        mark[root] = Mark::Active;
        while (!stack.empty()) {
            auto& [u, pos] = stack.back();
            auto f = g.followers(u);
            if (pos < f.size()) {
                VertexIndex v = f[pos++];
                if (mark[v] == Mark::Active) throw GraphError("classic_sg: cycle through '" + g.id(v) + "'");
                if (mark[v] == Mark::New) {
                    mark[v] = Mark::Active;
                    stack.emplace_back(v, 0);
                }
                continue;
            }
            std::vector<Nimber> vals;
            for (VertexIndex v : f) vals.push_back(value[v]);
            value[u] = mex(vals);
            mark[u] = Mark::Done;
            stack.pop_back();
        }
    }
    return value;
}

namespace {

/// Uniform double in [0, 1) from the top 53 bits; independent of the standard library's distributions.
double unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::string> numbered_vertices(std::size_t n)
{
    std::vector<std::string> ids;
    const int width = n <= 100 ? 2 : n <= 1000 ? 3 : 4;
    for (std::size_t i = 0; i < n; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "v%0*zu", width, i);
        ids.emplace_back(buf);
    }
    return ids;
}

void check_parameters(std::size_t n, double density, double leaf_fraction)
{
    if (n < 1 || n > 1000) throw PreconditionError("random graph: vertex count must be in [1, 1000]");
    if (!(density >= 0.0 && density <= 1.0)) throw PreconditionError("random graph: edge density must be in [0, 1]");
    if (!(leaf_fraction >= 0.0 && leaf_fraction <= 1.0)) {
        throw PreconditionError("random graph: leaf fraction must be in [0, 1]");
    }
}

} // namespace

GameGraph random_graph(std::uint64_t seed, std::size_t n_vertices, double edge_density, double leaf_fraction)
{
    check_parameters(n_vertices, edge_density, leaf_fraction);
    std::mt19937_64 rng(seed);
    const auto ids = numbered_vertices(n_vertices);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n_vertices; ++u) {
        if (unit(rng) < leaf_fraction) continue;
        for (std::size_t v = 0; v < n_vertices; ++v) {
            if (unit(rng) < edge_density) edges.emplace_back(ids[u], ids[v]);
        }
    }
    return build_graph(ids, edges);
}

GameGraph random_dag(std::uint64_t seed, std::size_t n_vertices, double edge_density)
{
    check_parameters(n_vertices, edge_density, 0.0);
    std::mt19937_64 rng(seed);
    const auto ids = numbered_vertices(n_vertices);
    std::vector<Edge> edges;
    for (std::size_t u = 1; u < n_vertices; ++u) {
        for (std::size_t v = 0; v < u; ++v) {
            if (unit(rng) < edge_density) edges.emplace_back(ids[u], ids[v]);
        }
    }
    return build_graph(ids, edges);
}

} // namespace loopy
