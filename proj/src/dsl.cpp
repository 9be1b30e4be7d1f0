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

#include "loopy/dsl.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "loopy/errors.hpp"
#include "loopy/export.hpp"

namespace loopy {

namespace {

std::vector<std::string> split_words(std::string_view line)
{
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) words.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return words;
}

std::size_t parse_count(const std::string& word, std::size_t limit, std::size_t line)
{
    std::size_t n = 0;
    const char* end = word.data() + word.size();
    auto [ptr, ec] = std::from_chars(word.data(), end, n);
    if (ec != std::errc() || ptr != end) throw ParseError(line, "malformed integer '" + word + "'");
    if (n > limit) throw ParseError(line, "integer " + word + " exceeds limit " + std::to_string(limit));
    return n;
}

void expect_args(const std::vector<std::string>& words, std::size_t n, std::size_t line)
{
    if (words.size() != n + 1) {
        throw ParseError(line, "'" + words[0] + "' takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
    }
}

void expect_id(const std::string& id, std::size_t line)
{
    if (!is_valid_vertex_id(id)) throw ParseError(line, "invalid vertex id '" + id + "'");
}

} // namespace

GraphSpec parse_spec(std::string_view text)
{
    GraphSpec spec;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto words = split_words(line);
        if (words.empty()) continue;

        const std::string& kw = words[0];
        Declaration d{Declaration::Kind::Vertex, line_no, {}, 0};
        if (kw == "v") {
            expect_args(words, 1, line_no);
            expect_id(words[1], line_no);
            d.names = {words[1]};
        } else if (kw == "e") {
            expect_args(words, 2, line_no);
            expect_id(words[1], line_no);
            expect_id(words[2], line_no);
            d.kind = Declaration::Kind::Edge;
            d.names = {words[1], words[2]};
        } else if (kw == "nimheap") {
            expect_args(words, 2, line_no);
            expect_id(words[1], line_no);
            d.kind = Declaration::Kind::NimHeap;
            d.names = {words[1]};
            d.number = parse_count(words[2], kMaxHeapSize, line_no);
        } else if (kw == "fig2") {
            expect_args(words, 1, line_no);
            d.kind = Declaration::Kind::Fig2;
            d.number = parse_count(words[1], kMaxFig2, line_no);
        } else if (kw == "fan") {
            expect_args(words, 1, line_no);
            d.kind = Declaration::Kind::Fan;
            d.number = parse_count(words[1], kMaxFan, line_no);
        } else if (kw == "tokens") {
            d.kind = Declaration::Kind::Tokens;
            for (std::size_t i = 1; i < words.size(); ++i) {
                expect_id(words[i], line_no);
                d.names.push_back(words[i]);
            }
        } else {
            throw ParseError(line_no, "unknown directive '" + kw + "'");
        }
        spec.declarations.push_back(std::move(d));
        if (end == text.size()) break;
    }
    return spec;
}

Game expand(const GraphSpec& spec)
{
    // first pass: every declared vertex with the line that declared it
    std::map<std::string, std::size_t> declared;
    std::vector<std::string> vertices;
    auto declare = [&](const GameGraph& part, std::size_t line) {
        for (const auto& id : part.ids()) {
            auto [it, fresh] = declared.emplace(id, line);
            if (!fresh) {
                throw ParseError(line, "duplicate vertex declaration '" + id + "' (first declared on line " +
                                           std::to_string(it->second) + ")");
            }
            vertices.push_back(id);
        }
    };

    GraphBuilder builder;
    for (const auto& d : spec.declarations) {
        switch (d.kind) {
        case Declaration::Kind::Vertex:
            declare(build_graph({d.names[0]}, {}), d.line);
            break;
        case Declaration::Kind::NimHeap: {
            GameGraph part = nim_heap(d.names[0], d.number);
            declare(part, d.line);
            for (const auto& [a, b] : part.edges()) builder.add_edge(a, b);
            break;
        }
        case Declaration::Kind::Fig2: {
            GameGraph part = fig2_family(d.number);
            declare(part, d.line);
            for (const auto& [a, b] : part.edges()) builder.add_edge(a, b);
            break;
        }
        case Declaration::Kind::Fan: {
            GameGraph part = unbounded_fan(d.number);
            declare(part, d.line);
            for (const auto& [a, b] : part.edges()) builder.add_edge(a, b);
            break;
        }
        case Declaration::Kind::Edge:
        case Declaration::Kind::Tokens: break;
        }
    }

    std::vector<std::string> tokens;
    for (const auto& d : spec.declarations) {
        if (d.kind != Declaration::Kind::Edge && d.kind != Declaration::Kind::Tokens) continue;
        for (const auto& id : d.names) {
            if (!declared.count(id)) throw ParseError(d.line, "undeclared vertex '" + id + "'");
        }
        if (d.kind == Declaration::Kind::Edge) builder.add_edge(d.names[0], d.names[1]);
        else tokens.insert(tokens.end(), d.names.begin(), d.names.end());
    }
    for (auto& id : vertices) builder.add_vertex(std::move(id));

    Game game;
    game.graph = builder.build();
    game.tokens = Position::from_ids(game.graph, tokens);
    return game;
}

Game load_game(std::string_view text)
{
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return parse_json_game(text);
    return expand(parse_spec(text));
}

} // namespace loopy
