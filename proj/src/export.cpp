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

#include "loopy/export.hpp"

#include <sstream>

#include "json.hpp"
#include "loopy/errors.hpp"

namespace loopy {

namespace {

std::string export_dot(const GameGraph& g, const Labeling* labeling)
{
    std::ostringstream out;
    out << "digraph game {\n";
    for (VertexIndex v = 0; v < g.size(); ++v) {
        out << "  \"" << g.id(v) << "\"";
        if (labeling) out << " [label=\"" << render(labeling->at(v)) << "\", xlabel=\"" << g.id(v) << "\"]";
        out << ";\n";
    }
    for (const auto& [a, b] : g.edges()) out << "  \"" << a << "\" -> \"" << b << "\";\n";
    out << "}\n";
    return out.str();
}

std::string export_json(const GameGraph& g, const Labeling* labeling, const Position* tokens)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["vertices"] = g.ids();
    ordered_json edges = ordered_json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
    doc["edges"] = std::move(edges);
    ordered_json toks = ordered_json::array();
    if (tokens) {
        for (VertexIndex v : tokens->tokens()) toks.push_back(g.id(v));
    }
    doc["tokens"] = std::move(toks);
    if (labeling) {
        ordered_json gamma = ordered_json::object();
        ordered_json counter = ordered_json::object();
        for (VertexIndex v = 0; v < g.size(); ++v) {
            const GammaValue& val = labeling->at(v);
            if (val.is_finite()) gamma[g.id(v)] = val.value();
            else gamma[g.id(v)] = render(val);
            if (labeling->counter[v]) counter[g.id(v)] = *labeling->counter[v];
        }
        doc["gamma"] = std::move(gamma);
        doc["counter"] = std::move(counter);
    }
    return doc.dump(2) + "\n";
}

} // namespace

std::string export_graph(const GameGraph& g, const Labeling* labeling, ExportFormat format, const Position* tokens)
{
    if (labeling && labeling->gamma.size() != g.size()) {
        throw PreconditionError("export: labeling does not belong to this graph");
    }
    return format == ExportFormat::Dot ? export_dot(g, labeling) : export_json(g, labeling, tokens);
}

Game parse_json_game(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    try {
        std::vector<std::string> vertices = doc.at("vertices").get<std::vector<std::string>>();
        std::vector<Edge> edges;
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError(0, "edge must be a [source, target] pair");
            edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
        }
        std::vector<std::string> tokens;
        if (doc.contains("tokens")) tokens = doc["tokens"].get<std::vector<std::string>>();

        Game game;
        game.graph = build_graph(std::move(vertices), edges);
        game.tokens = Position::from_ids(game.graph, tokens);
        return game;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed game JSON: ") + e.what());
    } catch (const GraphError& e) {
        throw ParseError(0, e.what());
    }
}

} // namespace loopy
