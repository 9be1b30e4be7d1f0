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

#ifndef LOOPY_STRATEGY_HPP
#define LOOPY_STRATEGY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loopy/gamma.hpp"
#include "loopy/graph.hpp"
#include "loopy/nim_algebra.hpp"

namespace loopy {

/// Finite multiset of token locations, kept sorted. A vertex may hold several tokens.
class Position {
  public:
    Position() = default;
    explicit Position(std::vector<VertexIndex> tokens);

    /// Resolves ids against g; throws GraphError for an unknown vertex.
    static Position from_ids(const GameGraph& g, std::span<const std::string> ids);

    const std::vector<VertexIndex>& tokens() const noexcept { return tokens_; }
    std::size_t size() const noexcept { return tokens_.size(); }
    bool empty() const noexcept { return tokens_.empty(); }
    bool contains(VertexIndex v) const;

    /// Moves one token from `from` to `to`; throws PreconditionError if there is no token on `from`.
    Position moved(VertexIndex from, VertexIndex to) const;

    std::string render(const GameGraph& g) const;

    friend auto operator<=>(const Position&, const Position&) = default;

  private:
    std::vector<VertexIndex> tokens_;
};

enum class Outcome { P, N, D };
enum class MoveKind { Winning, NonLosing, Losing };

const char* to_string(Outcome o);
const char* to_string(MoveKind k);

struct Move {
    VertexIndex from;
    VertexIndex to;
    MoveKind kind = MoveKind::Losing;

    friend bool operator==(const Move&, const Move&) = default;
};

/// Generalized Nim-sum of the gamma values under the tokens.
GammaValue position_sigma(const Labeling& labeling, const Position& p);

/// P iff sigma = 0; D iff sigma = inf(K) with 0 not in K; N otherwise.
Outcome classify(const GameGraph& g, const Labeling& labeling, const Position& p);

/// Every (from, to) move, one per distinct token vertex, in lexicographic order.
std::vector<std::pair<VertexIndex, VertexIndex>> legal_moves(const GameGraph& g, const Position& p);

struct BestMoveOptions {
    /// Break ties between winning moves by the destination's counter. When
    /// false only the lexicographic order of (from, to) is used.
    bool use_counters = true;
};

/**
 * Optimal move for the player to move, or nullopt when no token can move.
 *
 * A move to a P position is Winning. Among winning moves, those that do not
 * raise a finite token value are preferred (one always exists); then the
 * destination with the least counter; then lexicographic (from, to). Failing
 * that, the lexicographically least move to a D position (NonLosing), and
 * failing that the lexicographically least move (Losing).
 */
std::optional<Move> best_move(const GameGraph& g, const Labeling& labeling, const Position& p,
                              BestMoveOptions options = {});

/**
 * Reply to an opponent move u -> v with gamma(v) > gamma(u), gamma(u) finite:
 * the same token goes on to the w in F(v) with gamma(w) = gamma(u) and the
 * least counter, which is below c(u) whenever the labeling is valid.
 * Throws PreconditionError if the opponent move is not such an escalation or
 * no reply with a smaller counter exists.
 */
Move respond_to_escalation(const GameGraph& g, const Labeling& labeling, const Position& previous,
                           const Move& opponent_move);

/// True iff u -> v raised a finite value (gamma(u) finite, gamma(v) larger or infinite).
bool is_escalation(const Labeling& labeling, VertexIndex from, VertexIndex to);

/**
 * The engine's move in `current` after the opponent played `last` out of
 * `previous`: respond_to_escalation if `last` raised a token out of a P
 * position (and counters are in use), best_move otherwise.
 */
std::optional<Move> engine_move(const GameGraph& g, const Labeling& labeling, const Position& current,
                                const Position* previous, const std::optional<Move>& last, bool use_counters = true);

enum class Side { First, Second };
enum class Adversary { Exhaustive, SeededRandom };
enum class SimulationResult { EngineWin, EngineLoss, DrawCutoff };

const char* to_string(SimulationResult r);

struct Ply {
    bool engine;
    VertexIndex from;
    VertexIndex to;
    GammaValue sigma_before;
    GammaValue sigma_after;
};

struct SimulationOptions {
    Side engine_side = Side::First;
    Adversary adversary = Adversary::SeededRandom;
    std::uint64_t seed = 1;
    std::size_t max_plies = 1000;
    bool use_counters = true;
    /// Exhaustive mode gives up (BudgetExceeded) after this many distinct states.
    std::size_t state_budget = 5'000'000;
};

struct Simulation {
    SimulationResult result;
    /// The line that was played. For the exhaustive adversary this is the
    /// worst line for the engine (a failing one if any, else a longest win).
    std::vector<Ply> transcript;
    /// Exhaustive adversary only: distinct game states examined.
    std::size_t states = 0;
    /// Counter values of the replies made by respond_to_escalation along the transcript.
    std::vector<std::uint64_t> escalation_counters;
};

/**
 * Plays the engine against an adversary from `start`. The engine uses
 * respond_to_escalation when the adversary raised a token out of a P
 * position, best_move otherwise. A side unable to move loses; reaching
 * max_plies is a DrawCutoff. The exhaustive adversary explores every line
 * (with transpositions merged) and reports the worst result for the engine.
 */
Simulation simulate(const GameGraph& g, const Labeling& labeling, const Position& start,
                    const SimulationOptions& options);

/// "<side> <from>-><to> sigma=<sigma after>", one line per ply.
std::string render_transcript(const GameGraph& g, std::span<const Ply> transcript);

} // namespace loopy

#endif
