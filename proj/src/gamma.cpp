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

#include "loopy/gamma.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "loopy/errors.hpp"

namespace loopy {

Nimber gamma_prime(const GameGraph& g, PartialLabels labels, VertexIndex u)
{
    std::vector<Nimber> values;
    for (VertexIndex v : g.followers(u)) {
        if (labels[v]) values.push_back(*labels[v]);
    }
    return mex(values);
}

Nimber gamma_prime(const GameGraph& g, const Labeling& labeling, VertexIndex u)
{
    std::vector<Nimber> values;
    for (VertexIndex v : g.followers(u)) {
        if (labeling.is_finite(v)) values.push_back(labeling.at(v).value());
    }
    return mex(values);
}

namespace {

/// How many followers of a vertex carry each finite value. Values above the
/// out-degree can never be a mex candidate and are not tracked.
class FollowerValueCounts {
  public:
    explicit FollowerValueCounts(const GameGraph& g) : counts_(g.size())
    {
        for (VertexIndex v = 0; v < g.size(); ++v) counts_[v].assign(g.followers(v).size() + 1, 0);
    }

    void add(VertexIndex v, Nimber value)
    {
        if (value < counts_[v].size()) ++counts_[v][value];
    }

    bool has(VertexIndex v, Nimber value) const { return value < counts_[v].size() && counts_[v][value] > 0; }

    Nimber mex(VertexIndex v) const
    {
        Nimber m = 0;
        while (has(v, m)) ++m;
        return m;
    }

  private:
    std::vector<std::vector<std::uint32_t>> counts_;
};

} // namespace

Labeling compute_gamma(const GameGraph& g, std::span<const VertexIndex> scan_order)
{
    std::vector<VertexIndex> order;
    if (scan_order.empty()) {
        order.resize(g.size());
        std::iota(order.begin(), order.end(), VertexIndex{0});
    } else {
        order.assign(scan_order.begin(), scan_order.end());
        std::vector<VertexIndex> check = order;
        std::sort(check.begin(), check.end());
        for (VertexIndex v = 0; v < check.size(); ++v) {
            if (check[v] != v || check.size() != g.size()) {
                throw PreconditionError("compute_gamma: scan order is not a permutation of the vertices");
            }
        }
    }

    const auto preds = g.predecessor_lists();
    FollowerValueCounts counts(g);
    std::vector<std::optional<Nimber>> finite(g.size());
    std::vector<std::optional<std::uint64_t>> counter(g.size());
    std::uint64_t clock = 0;

    for (bool progress = true; progress;) {
        progress = false;
        for (VertexIndex u : order) {
            if (finite[u]) continue;
            const Nimber m = counts.mex(u);
            // every not-yet-finite follower must already be able to answer with m
            bool ready = true;
            for (VertexIndex v : g.followers(u)) {
                if (!finite[v] && !counts.has(v, m)) {
                    ready = false;
                    break;
                }
            }
            if (!ready) continue;
            finite[u] = m;
            counter[u] = clock++;
            for (VertexIndex p : preds[u]) counts.add(p, m);
            progress = true;
        }
    }

    Labeling out;
    out.gamma.resize(g.size());
    out.counter = std::move(counter);
    for (VertexIndex u = 0; u < g.size(); ++u) {
        if (finite[u]) {
            out.gamma[u] = GammaValue::finite(*finite[u]);
            continue;
        }
        std::vector<Nimber> k;
        for (VertexIndex v : g.followers(u)) {
            if (finite[v]) k.push_back(*finite[v]);
        }
        out.gamma[u] = GammaValue::infinite(std::move(k));
    }
    return out;
}

namespace {

/// gamma(v) > gamma(u) for finite gamma(u): inf is above every finite value.
bool exceeds(const GammaValue& v, Nimber u)
{
    return v.is_infinite() || v.value() > u;
}

std::string describe(const GameGraph& g, VertexIndex v, const Labeling& l)
{
    return g.id(v) + "=" + render(l.at(v));
}

} // namespace

ValidationReport validate_labeling(const GameGraph& g, const Labeling& labeling)
{
    if (labeling.gamma.size() != g.size() || labeling.counter.size() != g.size()) {
        throw PreconditionError("validate_labeling: labeling does not cover the graph");
    }
    ValidationReport report;

    for (VertexIndex u = 0; u < g.size(); ++u) {
        const GammaValue& gu = labeling.at(u);
        const Nimber gp = gamma_prime(g, labeling, u);

        if (gu.is_finite()) {
            const Nimber m = gu.value();
            if (m != gp) {
                report.condition_A.push_back({u, g.id(u) + ": gamma " + std::to_string(m) + " but mex of followers is " +
                                                     std::to_string(gp)});
            }
            if (!labeling.counter[u]) {
                report.condition_B.push_back({u, g.id(u) + ": finite vertex without counter"});
                continue;
            }
            const std::uint64_t cu = *labeling.counter[u];
            for (VertexIndex v : g.followers(u)) {
                if (!exceeds(labeling.at(v), m)) continue;
                bool witnessed = false;
                for (VertexIndex w : g.followers(v)) {
                    const GammaValue& gw = labeling.at(w);
                    if (gw.is_finite() && gw.value() == m && labeling.counter[w] && *labeling.counter[w] < cu) {
                        witnessed = true;
                        break;
                    }
                }
                if (!witnessed) {
                    report.condition_B.push_back({u, g.id(u) + ": follower " + describe(g, v, labeling) +
                                                         " has no reply of value " + std::to_string(m) +
                                                         " with smaller counter"});
                }
            }
            continue;
        }

        if (labeling.counter[u]) {
            report.condition_B.push_back({u, g.id(u) + ": infinite vertex carries a counter"});
        }
        std::vector<Nimber> k;
        for (VertexIndex v : g.followers(u)) {
            if (labeling.is_finite(v)) k.push_back(labeling.at(v).value());
        }
        if (GammaValue::infinite(k) != gu) {
            report.condition_C.push_back({u, g.id(u) + ": " + render(gu) + " does not match finite follower values " +
                                                 render(GammaValue::infinite(k))});
        }
        bool escape = false;
        for (VertexIndex v : g.followers(u)) {
            const GammaValue& gv = labeling.at(v);
            if (gv.is_infinite() && !gv.escape_contains(gp)) {
                escape = true;
                break;
            }
        }
        if (!escape) {
            report.condition_C.push_back(
                {u, g.id(u) + ": no infinite follower avoids gamma' = " + std::to_string(gp)});
        }
    }
    return report;
}

std::string render_labeling(const GameGraph& g, const Labeling& labeling)
{
    std::ostringstream out;
    for (VertexIndex v = 0; v < g.size(); ++v) {
        out << g.id(v) << ' ' << render(labeling.at(v)) << ' ';
        if (labeling.counter.at(v)) out << *labeling.counter[v];
        else out << '-';
        out << '\n';
    }
    return out.str();
}

GameGraph FamilyGenerator::materialize() const
{
    switch (kind) {
    case Kind::NimHeap: return nim_heap(prefix, size);
    case Kind::Fig2: return fig2_family(size);
    case Kind::Fan: return unbounded_fan(size);
    }
    throw PreconditionError("unknown family kind");
}

FamilyGenerator FamilyGenerator::enlarged(std::size_t extra) const
{
    FamilyGenerator bigger = *this;
    bigger.size += extra;
    return bigger;
}

FamilyLabeling gamma_of_family(const FamilyGenerator& family, std::span<const std::string> roots,
                               std::size_t budget, std::size_t enlarge_by)
{
    GameGraph sub = reachable_subgraph(family.materialize(), roots, budget);
    Labeling labeling = compute_gamma(sub);

    // In the enlarged family the same roots may reach more vertices; budget
    // only guards the original materialization.
    const GameGraph big = family.enlarged(enlarge_by).materialize();
    std::vector<std::string> present;
    for (const auto& r : roots) {
        if (big.find(r)) present.push_back(r);
    }
    const GameGraph big_sub = reachable_subgraph(big, present, big.size());
    const Labeling big_labeling = compute_gamma(big_sub);

    bool stable = true;
    for (VertexIndex v = 0; v < sub.size(); ++v) {
        auto w = big_sub.find(sub.id(v));
        if (!w || big_labeling.at(*w) != labeling.at(v)) {
            stable = false;
            break;
        }
    }
    return {std::move(sub), std::move(labeling), stable};
}

} // namespace loopy
