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

#ifndef LOOPY_GAMMA_HPP
#define LOOPY_GAMMA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loopy/graph.hpp"
#include "loopy/nim_algebra.hpp"

namespace loopy {

/**
 * Generalized Sprague-Grundy function of a graph together with a counter
 * function. Both vectors are indexed by VertexIndex of the graph they were
 * computed on. counter[v] is set exactly when gamma[v] is finite.
 */
struct Labeling {
    std::vector<GammaValue> gamma;
    std::vector<std::optional<std::uint64_t>> counter;

    const GammaValue& at(VertexIndex v) const { return gamma.at(v); }
    bool is_finite(VertexIndex v) const { return gamma.at(v).is_finite(); }
};

/// Finite labels assigned so far; nullopt for vertices that are unlabeled or infinite.
using PartialLabels = std::span<const std::optional<Nimber>>;

/// mex of the finite labels currently carried by the followers of u.
Nimber gamma_prime(const GameGraph& g, PartialLabels labels, VertexIndex u);
Nimber gamma_prime(const GameGraph& g, const Labeling& labeling, VertexIndex u);

/**
 * Computes the gamma function with a counter function.
 *
 * Unlabeled vertices are scanned repeatedly in `scan_order` (lexicographic
 * when empty). A vertex u is labeled m = gamma'(u) with the next timestamp as
 * its counter iff every follower of u that has no finite label yet already
 * has a finitely labeled follower of value m. Scanning stops after a pass
 * without assignments; the remaining vertices become inf(K).
 *
 * The resulting gamma map does not depend on the scan order; the counters do.
 */
Labeling compute_gamma(const GameGraph& g, std::span<const VertexIndex> scan_order = {});

struct Violation {
    VertexIndex vertex;
    std::string detail;
};

/// Result of checking a labeling against the three defining conditions.
struct ValidationReport {
    std::vector<Violation> condition_A;
    std::vector<Violation> condition_B;
    std::vector<Violation> condition_C;

    bool ok() const { return condition_A.empty() && condition_B.empty() && condition_C.empty(); }
};

/**
 * Checks, independently of compute_gamma:
 *  A. finite gamma(u) equals gamma'(u);
 *  B. for finite gamma(u) and v in F(u) with gamma(v) > gamma(u) (any inf is
 *     larger than any finite value), some w in F(v) has gamma(w) = gamma(u)
 *     and c(w) < c(u);
 *  C. for gamma(u) = inf, some v in F(u) has gamma(v) = inf(K) with
 *     gamma'(u) not in K.
 * Malformed labelings are reported too: a missing or spurious counter under
 * B, an inf(K) whose K is not the set of finite follower values under C.
 */
ValidationReport validate_labeling(const GameGraph& g, const Labeling& labeling);

/// One line per vertex in lexicographic order: "<id> <gamma> <counter|->".
std::string render_labeling(const GameGraph& g, const Labeling& labeling);

/// A lazily described family, materialized at a chosen size.
struct FamilyGenerator {
    enum class Kind { NimHeap, Fig2, Fan };
    Kind kind;
    std::size_t size;        // heap size, i_max, or fan width n
    std::string prefix = {}; // NimHeap only

    GameGraph materialize() const;
    FamilyGenerator enlarged(std::size_t extra) const;
};

struct FamilyLabeling {
    GameGraph graph;   // the reachable subgraph
    Labeling labeling; // on `graph`
    bool stable;       // gamma unchanged on `graph` when the family is materialized larger
};

/**
 * gamma on the part of a generated family reachable from `roots`, plus a
 * stability check against the family enlarged by `enlarge_by`. Throws
 * BudgetExceeded if the reachable part exceeds `budget` vertices.
 */
FamilyLabeling gamma_of_family(const FamilyGenerator& family, std::span<const std::string> roots,
                               std::size_t budget, std::size_t enlarge_by = 2);

} // namespace loopy

#endif
