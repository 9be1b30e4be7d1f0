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

#include "loopy/strategy.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include "loopy/errors.hpp"

namespace loopy {

Position::Position(std::vector<VertexIndex> tokens) : tokens_(std::move(tokens))
{
    std::sort(tokens_.begin(), tokens_.end());
}

Position Position::from_ids(const GameGraph& g, std::span<const std::string> ids)
{
    std::vector<VertexIndex> tokens;
    tokens.reserve(ids.size());
    for (const auto& id : ids) tokens.push_back(g.index_of(id));
    return Position(std::move(tokens));
}

bool Position::contains(VertexIndex v) const
{
    return std::binary_search(tokens_.begin(), tokens_.end(), v);
}

Position Position::moved(VertexIndex from, VertexIndex to) const
{
    auto it = std::lower_bound(tokens_.begin(), tokens_.end(), from);
    if (it == tokens_.end() || *it != from) throw PreconditionError("no token to move on the source vertex");
    Position next = *this;
    next.tokens_.erase(next.tokens_.begin() + (it - tokens_.begin()));
    next.tokens_.insert(std::upper_bound(next.tokens_.begin(), next.tokens_.end(), to), to);
    return next;
}

std::string Position::render(const GameGraph& g) const
{
    std::string out;
    for (VertexIndex v : tokens_) {
        if (!out.empty()) out += ' ';
        out += g.id(v);
    }
    return out;
}

const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::P: return "P";
    case Outcome::N: return "N";
    case Outcome::D: return "D";
    }
    return "?";
}

const char* to_string(MoveKind k)
{
    switch (k) {
    case MoveKind::Winning: return "winning";
    case MoveKind::NonLosing: return "nonlosing";
    case MoveKind::Losing: return "losing";
    }
    return "?";
}

const char* to_string(SimulationResult r)
{
    switch (r) {
    case SimulationResult::EngineWin: return "EngineWin";
    case SimulationResult::EngineLoss: return "EngineLoss";
    case SimulationResult::DrawCutoff: return "DrawCutoff";
    }
    return "?";
}

GammaValue position_sigma(const Labeling& labeling, const Position& p)
{
    GammaValue acc = GammaValue::finite(0);
    for (VertexIndex v : p.tokens()) acc = gnim_sum(acc, labeling.at(v));
    return acc;
}

namespace {

Outcome outcome_of(const GammaValue& s)
{
    if (s.is_finite()) return s.value() == 0 ? Outcome::P : Outcome::N;
    return s.escape_contains(0) ? Outcome::N : Outcome::D;
}

void check_position(const GameGraph& g, const Labeling& labeling, const Position& p)
{
    if (labeling.gamma.size() != g.size()) throw PreconditionError("labeling does not belong to this graph");
    for (VertexIndex v : p.tokens()) {
        if (v >= g.size()) throw GraphError("token on unknown vertex index " + std::to_string(v));
    }
}

} // namespace

Outcome classify(const GameGraph& g, const Labeling& labeling, const Position& p)
{
    check_position(g, labeling, p);
    return outcome_of(position_sigma(labeling, p));
}

std::vector<std::pair<VertexIndex, VertexIndex>> legal_moves(const GameGraph& g, const Position& p)
{
    std::vector<std::pair<VertexIndex, VertexIndex>> moves;
    const auto& tokens = p.tokens();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0 && tokens[i] == tokens[i - 1]) continue;
        for (VertexIndex to : g.followers(tokens[i])) moves.emplace_back(tokens[i], to);
    }
    return moves;
}

bool is_escalation(const Labeling& labeling, VertexIndex from, VertexIndex to)
{
    const GammaValue& a = labeling.at(from);
    if (a.is_infinite()) return false;
    const GammaValue& b = labeling.at(to);
    return b.is_infinite() || b.value() > a.value();
}

std::optional<Move> best_move(const GameGraph& g, const Labeling& labeling, const Position& p,
                              BestMoveOptions options)
{
    check_position(g, labeling, p);
    const auto moves = legal_moves(g, p);
    if (moves.empty()) return std::nullopt;

    constexpr auto kNoCounter = std::numeric_limits<std::uint64_t>::max();
    std::optional<Move> winning;
    bool winning_raises = true;
    std::uint64_t winning_counter = kNoCounter;
    std::optional<Move> nonlosing;

    // moves are already in lexicographic (from, to) order
    for (auto [from, to] : moves) {
        const Outcome next = classify(g, labeling, p.moved(from, to));
        if (next == Outcome::P) {
            const bool raises = is_escalation(labeling, from, to);
            const std::uint64_t c =
                options.use_counters ? labeling.counter[to].value_or(kNoCounter) : 0;
            if (!winning || (winning_raises && !raises) || (winning_raises == raises && c < winning_counter)) {
                winning = Move{from, to, MoveKind::Winning};
                winning_raises = raises;
                winning_counter = c;
            }
        } else if (next == Outcome::D && !nonlosing) {
            nonlosing = Move{from, to, MoveKind::NonLosing};
        }
    }
    if (winning) return winning;
    if (nonlosing) return nonlosing;
    return Move{moves.front().first, moves.front().second, MoveKind::Losing};
}

Move respond_to_escalation(const GameGraph& g, const Labeling& labeling, const Position& previous,
                           const Move& opponent_move)
{
    check_position(g, labeling, previous);
    const VertexIndex u = opponent_move.from;
    const VertexIndex v = opponent_move.to;
    if (!previous.contains(u) || !g.has_edge(u, v)) {
        throw PreconditionError("respond_to_escalation: opponent move is not legal in the previous position");
    }
    if (!is_escalation(labeling, u, v)) {
        throw PreconditionError("respond_to_escalation: move " + g.id(u) + "->" + g.id(v) +
                                " does not raise a finite value");
    }
    const Nimber target = labeling.at(u).value();
    const std::uint64_t cu = labeling.counter[u].value();

    std::optional<VertexIndex> best;
    for (VertexIndex w : g.followers(v)) {
        const GammaValue& gw = labeling.at(w);
        if (!gw.is_finite() || gw.value() != target) continue;
        if (!best || *labeling.counter[w] < *labeling.counter[*best]) best = w;
    }
    if (!best || *labeling.counter[*best] >= cu) {
        throw PreconditionError("respond_to_escalation: no reply from " + g.id(v) + " with value " +
                                std::to_string(target) + " and smaller counter");
    }
    const Position after = previous.moved(u, v).moved(v, *best);
    const Outcome o = classify(g, labeling, after);
    const MoveKind kind = o == Outcome::P ? MoveKind::Winning : o == Outcome::D ? MoveKind::NonLosing : MoveKind::Losing;
    return Move{v, *best, kind};
}

namespace {

struct EngineChoice {
    Move move;
    bool escalation_reply;
};

class Engine {
  public:
    Engine(const GameGraph& g, const Labeling& labeling, bool use_counters)
        : g_(g), labeling_(labeling), use_counters_(use_counters)
    {
    }

    /// Whether the adversary's move from `previous` obliges a counter-decreasing reply.
    bool must_reply(const Position& previous, VertexIndex from, VertexIndex to) const
    {
        return use_counters_ && is_escalation(labeling_, from, to) &&
               classify(g_, labeling_, previous) == Outcome::P;
    }

    std::optional<EngineChoice> choose(const Position& pos, const std::optional<Move>& reply_to,
                                       const Position* previous) const
    {
        if (reply_to && previous) {
            return EngineChoice{respond_to_escalation(g_, labeling_, *previous, *reply_to), true};
        }
        auto m = best_move(g_, labeling_, pos, BestMoveOptions{use_counters_});
        if (!m) return std::nullopt;
        return EngineChoice{*m, false};
    }

  private:
    const GameGraph& g_;
    const Labeling& labeling_;
    bool use_counters_;
};

} // namespace

std::optional<Move> engine_move(const GameGraph& g, const Labeling& labeling, const Position& current,
                                const Position* previous, const std::optional<Move>& last, bool use_counters)
{
    Engine engine(g, labeling, use_counters);
    std::optional<Move> reply;
    if (previous && last && engine.must_reply(*previous, last->from, last->to)) reply = last;
    auto choice = engine.choose(current, reply, previous);
    if (!choice) return std::nullopt;
    return choice->move;
}

namespace {

Ply make_ply(const Labeling& labeling, bool engine, const Position& before, VertexIndex from, VertexIndex to)
{
    return Ply{engine, from, to, position_sigma(labeling, before), position_sigma(labeling, before.moved(from, to))};
}

Simulation simulate_random(const GameGraph& g, const Labeling& labeling, const Position& start,
                           const SimulationOptions& options)
{
    Engine engine(g, labeling, options.use_counters);
    std::mt19937_64 rng(options.seed);
    Simulation sim{SimulationResult::DrawCutoff, {}, 0, {}};

    Position pos = start;
    Position previous;
    std::optional<Move> pending;  // adversary escalation awaiting a reply
    bool engine_to_move = options.engine_side == Side::First;

    for (std::size_t ply = 0; ply < options.max_plies; ++ply) {
        if (engine_to_move) {
            auto choice = engine.choose(pos, pending, &previous);
            if (!choice) {
                sim.result = SimulationResult::EngineLoss;
                return sim;
            }
            sim.transcript.push_back(make_ply(labeling, true, pos, choice->move.from, choice->move.to));
            if (choice->escalation_reply) sim.escalation_counters.push_back(*labeling.counter[choice->move.to]);
            pos = pos.moved(choice->move.from, choice->move.to);
            pending.reset();
        } else {
            auto moves = legal_moves(g, pos);
            if (moves.empty()) {
                sim.result = SimulationResult::EngineWin;
                return sim;
            }
            auto [from, to] = moves[rng() % moves.size()];
            sim.transcript.push_back(make_ply(labeling, false, pos, from, to));
            previous = pos;
            if (engine.must_reply(pos, from, to)) pending = Move{from, to, MoveKind::Losing};
            pos = pos.moved(from, to);
        }
        engine_to_move = !engine_to_move;
    }
    // the side to move after the last ply may already be stuck
    if (legal_moves(g, pos).empty()) {
        sim.result = engine_to_move ? SimulationResult::EngineLoss : SimulationResult::EngineWin;
    }
    return sim;
}

/// Game state of the exhaustive search: whose turn, and whether the engine owes an escalation reply.
struct StateKey {
    Position pos;
    bool engine_to_move;
    std::optional<std::pair<VertexIndex, VertexIndex>> pending;

    friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const noexcept
    {
        std::size_t h = k.engine_to_move ? 0x9e3779b97f4a7c15ULL : 0;
        auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
        for (VertexIndex v : k.pos.tokens()) mix(v);
        if (k.pending) {
            mix(k.pending->first + 1);
            mix(k.pending->second + 1);
        }
        return h;
    }
};

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max() / 4;

struct Eval {
    SimulationResult result;
    std::size_t plies;  // length of the worst line from here; kUnbounded for forced cycles
};

/// Lower is worse for the engine.
int severity(SimulationResult r)
{
    switch (r) {
    case SimulationResult::EngineLoss: return 0;
    case SimulationResult::DrawCutoff: return 1;
    case SimulationResult::EngineWin: return 2;
    }
    return 2;
}

bool worse(const Eval& a, const Eval& b)
{
    if (severity(a.result) != severity(b.result)) return severity(a.result) < severity(b.result);
    return a.plies > b.plies;
}

class ExhaustiveSearch {
  public:
    ExhaustiveSearch(const GameGraph& g, const Labeling& labeling, const SimulationOptions& options)
        : g_(g), labeling_(labeling), options_(options), engine_(g, labeling, options.use_counters)
    {
    }

    Simulation run(const Position& start)
    {
        StateKey root{start, options_.engine_side == Side::First, std::nullopt};
        Eval e = visit(root, 0).eval;
        Simulation sim{e.result, {}, memo_.size(), {}};
        if (e.plies > options_.max_plies && e.result != SimulationResult::DrawCutoff) {
            sim.result = SimulationResult::DrawCutoff;
        }
        replay(root, sim);
        return sim;
    }

  private:
    struct Entry {
        Eval eval;
        bool truncated = false;  // depends on the max_plies cut, not intrinsic to the state
        bool on_stack = false;
        std::optional<std::pair<VertexIndex, VertexIndex>> move;
        bool escalation_reply = false;
    };

    struct Visited {
        Eval eval;
        bool truncated;
    };

    StateKey successor(const StateKey& k, VertexIndex from, VertexIndex to) const
    {
        StateKey next{k.pos.moved(from, to), !k.engine_to_move, std::nullopt};
        if (!k.engine_to_move && engine_.must_reply(k.pos, from, to)) next.pending = std::make_pair(from, to);
        return next;
    }

    Visited visit(const StateKey& k, std::size_t depth)
    {
        auto found = memo_.find(k);
        if (found != memo_.end()) {
            if (found->second.on_stack) return {{SimulationResult::DrawCutoff, kUnbounded}, false};
            if (!found->second.truncated) return {found->second.eval, false};
        }
        if (depth > options_.max_plies) return {{SimulationResult::DrawCutoff, kUnbounded}, true};
        if (memo_.size() >= options_.state_budget) {
            throw BudgetExceeded("exhaustive simulation exceeded " + std::to_string(options_.state_budget) +
                                 " states");
        }
        memo_[k].on_stack = true;

        Entry entry;
        if (k.engine_to_move) {
            std::optional<Move> reply;
            Position previous;
            if (k.pending) {
                reply = Move{k.pending->first, k.pending->second, MoveKind::Losing};
                previous = k.pos.moved(k.pending->second, k.pending->first);
            }
            auto choice = engine_.choose(k.pos, reply, &previous);
            if (!choice) {
                entry.eval = {SimulationResult::EngineLoss, 0};
            } else {
                auto child = visit(successor(k, choice->move.from, choice->move.to), depth + 1);
                entry.eval = {child.eval.result, add_ply(child.eval.plies)};
                entry.truncated = child.truncated;
                entry.move = std::make_pair(choice->move.from, choice->move.to);
                entry.escalation_reply = choice->escalation_reply;
            }
        } else {
            auto moves = legal_moves(g_, k.pos);
            if (moves.empty()) {
                entry.eval = {SimulationResult::EngineWin, 0};
            } else {
                std::optional<Eval> worst;
                for (auto [from, to] : moves) {
                    auto child = visit(successor(k, from, to), depth + 1);
                    entry.truncated = entry.truncated || child.truncated;
                    Eval e{child.eval.result, add_ply(child.eval.plies)};
                    if (!worst || worse(e, *worst)) {
                        worst = e;
                        entry.move = std::make_pair(from, to);
                    }
                    if (e.result == SimulationResult::EngineLoss) break;
                }
                entry.eval = *worst;
            }
        }
        Entry& slot = memo_[k];
        slot = entry;
        return {entry.eval, entry.truncated};
    }

    static std::size_t add_ply(std::size_t plies) { return plies >= kUnbounded ? kUnbounded : plies + 1; }

    void replay(StateKey k, Simulation& sim) const
    {
        for (std::size_t ply = 0; ply <= options_.max_plies; ++ply) {
            auto it = memo_.find(k);
            if (it == memo_.end() || !it->second.move) return;
            auto [from, to] = *it->second.move;
            sim.transcript.push_back(make_ply(labeling_, k.engine_to_move, k.pos, from, to));
            if (it->second.escalation_reply) sim.escalation_counters.push_back(*labeling_.counter[to]);
            k = successor(k, from, to);
        }
    }

    const GameGraph& g_;
    const Labeling& labeling_;
    const SimulationOptions& options_;
    Engine engine_;
    std::unordered_map<StateKey, Entry, StateKeyHash> memo_;
};

} // namespace

Simulation simulate(const GameGraph& g, const Labeling& labeling, const Position& start,
                    const SimulationOptions& options)
{
    check_position(g, labeling, start);
    if (options.max_plies == 0) throw PreconditionError("simulate: max_plies must be positive");
    if (options.adversary == Adversary::SeededRandom) return simulate_random(g, labeling, start, options);
    ExhaustiveSearch search(g, labeling, options);
    return search.run(start);
}

std::string render_transcript(const GameGraph& g, std::span<const Ply> transcript)
{
    std::ostringstream out;
    for (const Ply& p : transcript) {
        out << (p.engine ? "engine" : "adversary") << ' ' << g.id(p.from) << "->" << g.id(p.to)
            << " sigma=" << render(p.sigma_after) << '\n';
    }
    return out.str();
}

} // namespace loopy
