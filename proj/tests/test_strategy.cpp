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

#include "corpus.hpp"
#include "doctest.h"
#include "loopy/errors.hpp"
#include "loopy/gamma.hpp"
#include "loopy/strategy.hpp"

using namespace loopy;

namespace {

GammaValue fin(Nimber n) { return GammaValue::finite(n); }
GammaValue inf(std::initializer_list<Nimber> k) { return GammaValue::infinite(k); }

Position tokens(const GameGraph& g, std::vector<std::string> ids) { return Position::from_ids(g, ids); }

struct SampleGame {
    GameGraph g = fig2_family(9);
    Labeling l = compute_gamma(g);
    Position start = tokens(g, {"H9:1", "H9:3", "H9:2", "G7:4", "G9:5"});
};

} // namespace

TEST_CASE("Position")
{
    GameGraph g = nim_heap("h", 3);
    Position p = tokens(g, {"h:3", "h:1", "h:3"});
    CHECK(p.size() == 3);
    CHECK(p.render(g) == "h:1 h:3 h:3");
    Position q = p.moved(g.index_of("h:3"), g.index_of("h:1"));
    CHECK(q.render(g) == "h:1 h:1 h:3");
    CHECK_THROWS_AS(p.moved(g.index_of("h:0"), g.index_of("h:0")), PreconditionError);
    CHECK_THROWS_AS(tokens(g, {"nope"}), GraphError);
    CHECK(legal_moves(g, p).size() == 1 + 3);
}

TEST_CASE("classify")
{
    SampleGame s;
    std::vector<GammaValue> values;
    for (VertexIndex v : s.start.tokens()) values.push_back(s.l.at(v));
    CHECK(position_sigma(s.l, s.start) == inf({0, 4, 5, 6, 7}));
    CHECK(classify(s.g, s.l, s.start) == Outcome::N);

    // two tokens on infinite vertices: a draw whatever else is on the board
    CHECK(classify(s.g, s.l, tokens(s.g, {"G9:5", "G9:6", "H9:1"})) == Outcome::D);
    CHECK(classify(s.g, s.l, tokens(s.g, {"u_0", "u_2"})) == Outcome::D);

    CHECK(classify(s.g, s.l, Position{}) == Outcome::P);
    CHECK_THROWS_AS(classify(s.g, s.l, Position({static_cast<VertexIndex>(s.g.size())})), GraphError);
}

TEST_CASE("best_move")
{
    SUBCASE("sample problem: push the infinite token to 4")
    {
        SampleGame s;
        auto m = best_move(s.g, s.l, s.start);
        REQUIRE(m);
        CHECK(m->kind == MoveKind::Winning);
        CHECK(s.l.at(m->from).is_infinite());
        CHECK(s.l.at(m->to) == fin(4));
        CHECK(s.g.id(m->from) == "G9:5");
        CHECK(s.g.id(m->to) == "G9:4");
        CHECK(position_sigma(s.l, s.start.moved(m->from, m->to)) == fin(0));
    }
    SUBCASE("heap top goes to the leaf")
    {
        GameGraph h = nim_heap("h", 5);
        Labeling l = compute_gamma(h);
        auto m = best_move(h, l, tokens(h, {"h:5"}));
        REQUIRE(m);
        CHECK(m->kind == MoveKind::Winning);
        CHECK(h.id(m->to) == "h:0");
    }
    SUBCASE("a loop is a nonlosing move")
    {
        GameGraph loop = build_graph({"a"}, {{"a", "a"}});
        Labeling l = compute_gamma(loop);
        auto m = best_move(loop, l, tokens(loop, {"a"}));
        REQUIRE(m);
        CHECK(m->kind == MoveKind::NonLosing);
        CHECK(m->from == 0);
        CHECK(m->to == 0);
    }
    SUBCASE("losing and stuck positions")
    {
        GameGraph h = nim_heap("h", 2);
        Labeling l = compute_gamma(h);
        auto m = best_move(h, l, tokens(h, {"h:1", "h:1"}));
        REQUIRE(m);
        CHECK(m->kind == MoveKind::Losing);
        CHECK_FALSE(best_move(h, l, tokens(h, {"h:0"})));
        CHECK_FALSE(best_move(h, l, Position{}));
    }
    SUBCASE("winning moves prefer lowering a value over raising one")
    {
        // x (value 1) may rise to y (value 3, early counter); z:3 may drop to z:1 (later counter)
        GraphBuilder b;
        b.add_nim_heap("a", 2).add_nim_heap("z", 3).add_vertex("x").add_vertex("y");
        for (auto [from, to] : std::vector<std::pair<std::string, std::string>>{
                 {"x", "a:0"}, {"x", "y"}, {"y", "a:0"}, {"y", "a:1"}, {"y", "a:2"}, {"y", "x"}}) {
            b.add_edge(from, to);
        }
        GameGraph g = b.build();
        Labeling l = compute_gamma(g);
        REQUIRE(l.at(g.index_of("x")) == fin(1));
        REQUIRE(l.at(g.index_of("y")) == fin(3));
        REQUIRE(*l.counter[g.index_of("y")] < *l.counter[g.index_of("z:1")]);
        auto m = best_move(g, l, tokens(g, {"x", "z:3"}));
        REQUIRE(m);
        CHECK(m->kind == MoveKind::Winning);
        CHECK(g.id(m->from) == "z:3");
        CHECK(g.id(m->to) == "z:1");
    }
}

TEST_CASE("respond_to_escalation")
{
    // a1 -> a0 is a heap of size 1; c loops on itself and can drop to a1; u may jump into c
    GameGraph g = build_graph({"a0", "a1", "c", "u"}, {{"a1", "a0"}, {"c", "c"}, {"c", "a1"}, {"u", "a0"}, {"u", "c"}});
    Labeling l = compute_gamma(g);
    REQUIRE(validate_labeling(g, l).ok());
    const VertexIndex a0 = g.index_of("a0");
    const VertexIndex a1 = g.index_of("a1");
    const VertexIndex c = g.index_of("c");
    const VertexIndex u = g.index_of("u");
    REQUIRE(l.at(u) == fin(1));
    REQUIRE(l.at(c) == inf({1}));

    SUBCASE("jump into an infinite vertex is answered by an earlier vertex of the same value")
    {
        Position before = tokens(g, {"u"});
        Move reply = respond_to_escalation(g, l, before, Move{u, c, MoveKind::Losing});
        CHECK(reply.from == c);
        CHECK(reply.to == a1);
        CHECK(reply.kind == MoveKind::Losing);  // a single token on a1 is an N position for the opponent
        CHECK(*l.counter[a1] < *l.counter[u]);
    }
    SUBCASE("the reply restores a P position")
    {
        Position before = tokens(g, {"u", "a1"});
        REQUIRE(classify(g, l, before) == Outcome::P);
        Move reply = respond_to_escalation(g, l, before, Move{u, c, MoveKind::Losing});
        CHECK(reply.kind == MoveKind::Winning);
    }
    SUBCASE("dropping a value is not an escalation")
    {
        Position before = tokens(g, {"u"});
        CHECK_THROWS_AS(respond_to_escalation(g, l, before, Move{u, a0, MoveKind::Losing}), PreconditionError);
    }
    SUBCASE("move must be legal")
    {
        Position before = tokens(g, {"a1"});
        CHECK_THROWS_AS(respond_to_escalation(g, l, before, Move{u, c, MoveKind::Losing}), PreconditionError);
    }
}

TEST_CASE("respond_to_escalation on a DAG uses the mex witness")
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GameGraph g = testing::corpus_dag(seed);
        Labeling l = compute_gamma(g);
        for (VertexIndex u = 0; u < g.size(); ++u) {
            for (VertexIndex v : g.followers(u)) {
                if (!is_escalation(l, u, v)) continue;
                Move reply = respond_to_escalation(g, l, Position({u}), Move{u, v, MoveKind::Losing});
                CHECK(l.at(reply.to) == l.at(u));
                CHECK(*l.counter[reply.to] < *l.counter[u]);
            }
        }
    }
}

TEST_CASE("P, N and D positions have the expected successors")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        GameGraph g = testing::corpus_graph(seed);
        Labeling l = compute_gamma(g);
        for (std::size_t k = 1; k <= 3; ++k) {
            for (const Position& p : testing::all_positions(g, k)) {
                const Outcome o = classify(g, l, p);
                bool has_p = false, has_d = false, all_n = true;
                for (auto [from, to] : legal_moves(g, p)) {
                    const Outcome next = classify(g, l, p.moved(from, to));
                    has_p = has_p || next == Outcome::P;
                    has_d = has_d || next == Outcome::D;
                    all_n = all_n && next == Outcome::N;
                }
                auto m = best_move(g, l, p);
                if (o == Outcome::N) {
                    REQUIRE(has_p);
                    REQUIRE(m);
                    CHECK(m->kind == MoveKind::Winning);
                    CHECK(classify(g, l, p.moved(m->from, m->to)) == Outcome::P);
                } else if (o == Outcome::P) {
                    CHECK(all_n);
                    if (m) CHECK(m->kind == MoveKind::Losing);
                } else {
                    CHECK_FALSE(has_p);
                    CHECK(has_d);
                    REQUIRE(m);
                    CHECK(m->kind == MoveKind::NonLosing);
                }
            }
        }
    }
}

TEST_CASE("exhaustive simulation wins every line from N and P")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        GameGraph g = testing::corpus_graph(seed);
        if (g.size() > 10) continue;
        Labeling l = compute_gamma(g);
        for (std::size_t k = 1; k <= 2; ++k) {
            for (const Position& p : testing::all_positions(g, k)) {
                const Outcome o = classify(g, l, p);
                if (o == Outcome::D) continue;
                SimulationOptions opt;
                opt.adversary = Adversary::Exhaustive;
                opt.engine_side = o == Outcome::N ? Side::First : Side::Second;
                Simulation sim = simulate(g, l, p, opt);
                CAPTURE(seed);
                CAPTURE(p.render(g));
                CHECK(sim.result == SimulationResult::EngineWin);
                CHECK(sim.transcript.size() <= opt.max_plies);
            }
        }
    }
}

TEST_CASE("draw positions are never lost")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        GameGraph g = testing::corpus_graph(seed);
        Labeling l = compute_gamma(g);
        for (const Position& p : testing::all_positions(g, 2)) {
            if (classify(g, l, p) != Outcome::D) continue;
            for (Side side : {Side::First, Side::Second}) {
                SimulationOptions opt;
                opt.engine_side = side;
                opt.seed = seed;
                opt.max_plies = 200;
                CHECK(simulate(g, l, p, opt).result != SimulationResult::EngineLoss);
                opt.adversary = Adversary::Exhaustive;
                CHECK(simulate(g, l, p, opt).result != SimulationResult::EngineLoss);
            }
        }
    }
}

TEST_CASE("escalation replies strictly decrease the counter")
{
    SampleGame s;
    Position after = s.start.moved(s.g.index_of("G9:5"), s.g.index_of("G9:4"));
    std::size_t replies = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        SimulationOptions opt;
        opt.engine_side = Side::Second;
        opt.seed = seed;
        Simulation sim = simulate(s.g, s.l, after, opt);
        CHECK(sim.result == SimulationResult::EngineWin);
        for (std::size_t k = 1; k < sim.transcript.size(); ++k) {
            const Ply& adv = sim.transcript[k - 1];
            const Ply& eng = sim.transcript[k];
            if (!eng.engine || adv.engine || eng.from != adv.to) continue;
            if (!is_escalation(s.l, adv.from, adv.to) || !adv.sigma_before.is_finite() ||
                adv.sigma_before.value() != 0) {
                continue;
            }
            ++replies;
            CHECK(*s.l.counter[eng.to] < *s.l.counter[adv.from]);
        }
        CHECK(sim.escalation_counters.size() <= sim.transcript.size());
    }
    CHECK(replies > 0);
}

TEST_CASE("fig2 positions are won without counters")
{
    SampleGame s;
    SimulationOptions opt;
    opt.use_counters = false;
    opt.adversary = Adversary::Exhaustive;
    CHECK(simulate(s.g, s.l, s.start, opt).result == SimulationResult::EngineWin);

    const std::vector<std::vector<std::string>> starts{
        {"u_9", "H9:3"}, {"u_4", "G4:2", "H2:1"}, {"G8:4", "u_6"}, {"u_8"}, {"u_9", "u_3"}};
    for (const auto& ids : starts) {
        Position p = tokens(s.g, ids);
        const Outcome o = classify(s.g, s.l, p);
        if (o == Outcome::D) continue;
        opt.engine_side = o == Outcome::N ? Side::First : Side::Second;
        CAPTURE(p.render(s.g));
        CHECK(simulate(s.g, s.l, p, opt).result == SimulationResult::EngineWin);
    }
}

TEST_CASE("simulate edge cases and transcript")
{
    GameGraph h = nim_heap("h", 3);
    Labeling l = compute_gamma(h);
    SimulationOptions opt;
    Simulation sim = simulate(h, l, tokens(h, {"h:3"}), opt);
    CHECK(sim.result == SimulationResult::EngineWin);
    CHECK(render_transcript(h, sim.transcript) == "engine h:3->h:0 sigma=0\n");

    opt.engine_side = Side::Second;
    sim = simulate(h, l, tokens(h, {"h:0"}), opt);
    CHECK(sim.result == SimulationResult::EngineWin);
    CHECK(sim.transcript.empty());

    opt.engine_side = Side::First;
    sim = simulate(h, l, tokens(h, {"h:0"}), opt);
    CHECK(sim.result == SimulationResult::EngineLoss);

    GameGraph loop = build_graph({"a"}, {{"a", "a"}});
    Labeling ll = compute_gamma(loop);
    opt.max_plies = 7;
    sim = simulate(loop, ll, tokens(loop, {"a"}), opt);
    CHECK(sim.result == SimulationResult::DrawCutoff);
    CHECK(sim.transcript.size() == 7);
    CHECK(render_transcript(loop, sim.transcript).starts_with("engine a->a sigma=inf()\nadversary a->a"));

    opt.adversary = Adversary::Exhaustive;
    CHECK(simulate(loop, ll, tokens(loop, {"a"}), opt).result == SimulationResult::DrawCutoff);

    opt.max_plies = 0;
    CHECK_THROWS_AS(simulate(loop, ll, tokens(loop, {"a"}), opt), PreconditionError);
}

TEST_CASE("random simulations are reproducible")
{
    SampleGame s;
    SimulationOptions opt;
    opt.seed = 77;
    Simulation a = simulate(s.g, s.l, s.start, opt);
    Simulation b = simulate(s.g, s.l, s.start, opt);
    CHECK(render_transcript(s.g, a.transcript) == render_transcript(s.g, b.transcript));
    CHECK(a.result == SimulationResult::EngineWin);
}
