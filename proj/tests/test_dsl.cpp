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

#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "json.hpp"
#include "loopy/dsl.hpp"
#include "loopy/errors.hpp"
#include "loopy/export.hpp"
#include "loopy/gamma.hpp"

using namespace loopy;

namespace {

std::size_t error_line(std::string_view text)
{
    try {
        expand(parse_spec(text));
    } catch (const ParseError& e) {
        return e.line();
    }
    FAIL("expected a parse error");
    return 0;
}

} // namespace

TEST_CASE("parse_spec")
{
    Game g = load_game("v a\nv b\ne a b\ntokens a");
    CHECK(g.graph.size() == 2);
    CHECK(g.graph.edge_count() == 1);
    CHECK(g.tokens.size() == 1);

    Game heap = load_game("nimheap h 2\ntokens h:2");
    CHECK(heap.graph == nim_heap("h", 2));
    CHECK(heap.tokens.render(heap.graph) == "h:2");

    Game commented = load_game("# heading\n\nv a   # trailing\n\tv b\ne a b\ne a b\r\ne b a\ntokens a a\ntokens b\n");
    CHECK(commented.graph.edge_count() == 2);
    CHECK(commented.tokens.render(commented.graph) == "a a b");

    Game gens = load_game("fig2 3\nfan 2\n");
    CHECK(gens.graph.size() == fig2_family(3).size() + unbounded_fan(2).size());
    CHECK(gens.tokens.empty());

    // edges may refer to vertices declared further down
    CHECK(load_game("e a b\nv a\nv b\n").graph.edge_count() == 1);
}

TEST_CASE("parse errors carry line numbers")
{
    CHECK(error_line("e a b") == 1);
    CHECK(error_line("v a\n\ne a b") == 3);
    CHECK(error_line("v a\nnimheap h x") == 2);
    CHECK(error_line("v a\nnimheap h -1") == 2);
    CHECK(error_line("v a\nnimheap h 99999") == 2);
    CHECK(error_line("v a\nv a") == 2);
    CHECK(error_line("nimheap h 2\nv h:1") == 2);
    CHECK(error_line("v a b") == 1);
    CHECK(error_line("v a\nbogus a") == 2);
    CHECK(error_line("v a\nv b!c") == 2);
    CHECK(error_line("v a\ntokens a z") == 2);
    CHECK(error_line("fig2") == 1);
    CHECK(error_line("fan 1 2") == 1);
}

TEST_CASE("parser never fails other than with a positioned error")
{
    std::mt19937_64 rng(31337);
    const std::vector<std::string> fragments{"v ", "e ", "nimheap ", "fig2 ", "fan ", "tokens ", "a", "b", "h:1",
                                             " ", "\n", "#", "0", "7", "99", "-", "\t", "\r\n", "x y z", "\xff"};
    for (int i = 0; i < 3000; ++i) {
        std::string text;
        if (i % 2 == 0) {
            const std::size_t len = rng() % 40;
            for (std::size_t k = 0; k < len; ++k) text += static_cast<char>(rng() % 256);
        } else {
            const std::size_t len = rng() % 12;
            for (std::size_t k = 0; k < len; ++k) text += fragments[rng() % fragments.size()];
        }
        try {
            Game g = load_game(text);
            CHECK(g.graph.size() <= 100000);
        } catch (const ParseError&) {
        } catch (const GameError& e) {
            FAIL("unexpected error kind: " << e.what());
        }
    }
}

TEST_CASE("export")
{
    GameGraph loop = build_graph({"a"}, {{"a", "a"}});
    Labeling l = compute_gamma(loop);
    const std::string dot = export_graph(loop, &l, ExportFormat::Dot);
    CHECK(dot == "digraph game {\n  \"a\" [label=\"inf()\", xlabel=\"a\"];\n  \"a\" -> \"a\";\n}\n");
    CHECK(export_graph(loop, nullptr, ExportFormat::Dot) == "digraph game {\n  \"a\";\n  \"a\" -> \"a\";\n}\n");

    GameGraph h = nim_heap("h", 2);
    Labeling lh = compute_gamma(h);
    auto doc = nlohmann::json::parse(export_graph(h, &lh, ExportFormat::Json));
    CHECK(doc["gamma"]["h:0"] == 0);
    CHECK(doc["gamma"]["h:1"] == 1);
    CHECK(doc["gamma"]["h:2"] == 2);
    CHECK(doc["counter"]["h:2"] == 2);
    CHECK(doc["edges"].size() == 3);

    auto ldoc = nlohmann::json::parse(export_graph(loop, &l, ExportFormat::Json));
    CHECK(ldoc["gamma"]["a"] == "inf()");
    CHECK_FALSE(ldoc["counter"].contains("a"));
}

TEST_CASE("json export round-trips")
{
    Game sample = load_game("fig2 2\ntokens u_2 G1:0 G1:0\n");
    Labeling l = compute_gamma(sample.graph);
    Game back = load_game(export_graph(sample.graph, &l, ExportFormat::Json, &sample.tokens));
    CHECK(back.graph == sample.graph);
    CHECK(back.tokens == sample.tokens);

    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GameGraph g = testing::corpus_graph(seed);
        CHECK(load_game(export_graph(g, nullptr, ExportFormat::Json)).graph == g);
    }

    CHECK_THROWS_AS(load_game("{\"vertices\": [\"a\"], \"edges\": [[\"a\", \"b\"]]}"), ParseError);
    CHECK_THROWS_AS(load_game("{\"vertices\": 3}"), ParseError);
    CHECK_THROWS_AS(load_game("{ nope"), ParseError);
}
