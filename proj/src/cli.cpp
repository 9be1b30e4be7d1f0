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

#include "loopy/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "loopy/dsl.hpp"
#include "loopy/errors.hpp"
#include "loopy/export.hpp"
#include "loopy/gamma.hpp"
#include "loopy/oracle.hpp"
#include "loopy/strategy.hpp"

namespace loopy {

namespace {

Game read_game(const std::string& path, std::istream& in)
{
    std::ostringstream text;
    if (path == "-") {
        // play mode reads moves after a line holding only "."
        std::string line;
        while (std::getline(in, line) && line != ".") text << line << '\n';
    } else {
        std::ifstream file(path, std::ios::binary);
        if (!file) throw GameError("cannot open '" + path + "'");
        text << file.rdbuf();
    }
    return load_game(text.str());
}

int cmd_gamma(const Game& game, std::ostream& out)
{
    out << render_labeling(game.graph, compute_gamma(game.graph));
    return kExitOk;
}

int cmd_classify(const Game& game, std::ostream& out)
{
    const Labeling lab = compute_gamma(game.graph);
    out << to_string(classify(game.graph, lab, game.tokens)) << " sigma=" << render(position_sigma(lab, game.tokens))
        << '\n';
    return kExitOk;
}

int cmd_bestmove(const Game& game, std::ostream& out)
{
    const Labeling lab = compute_gamma(game.graph);
    auto m = best_move(game.graph, lab, game.tokens);
    if (!m) {
        out << "none\n";
        return kExitOk;
    }
    const Position after = game.tokens.moved(m->from, m->to);
    out << game.graph.id(m->from) << "->" << game.graph.id(m->to) << ' ' << to_string(m->kind)
        << " sigma=" << render(position_sigma(lab, after)) << '\n';
    return kExitOk;
}

int cmd_oracle(const Game& game, std::size_t budget, std::ostream& out)
{
    auto labels = oracle_classify(game.graph, game.tokens, budget);
    out << to_string(labels.at(game.tokens)) << " states=" << labels.size() << '\n';
    return kExitOk;
}

void report_condition(std::ostream& out, const char* name, const std::vector<Violation>& violations)
{
    if (violations.empty()) {
        out << name << " ok\n";
        return;
    }
    out << name << " violations: " << violations.size() << '\n';
    for (const auto& v : violations) out << "  " << v.detail << '\n';
}

int cmd_check(const Game& game, std::uint64_t seed, std::size_t permutations, std::size_t oracle_budget,
              std::ostream& out)
{
    const GameGraph& g = game.graph;
    const Labeling lab = compute_gamma(g);
    bool ok = true;

    const ValidationReport report = validate_labeling(g, lab);
    report_condition(out, "A", report.condition_A);
    report_condition(out, "B", report.condition_B);
    report_condition(out, "C", report.condition_C);
    ok = ok && report.ok();

    std::mt19937_64 rng(seed);
    std::vector<VertexIndex> order(g.size());
    std::iota(order.begin(), order.end(), VertexIndex{0});
    bool unique = true;
    for (std::size_t k = 0; k < permutations && unique; ++k) {
        std::shuffle(order.begin(), order.end(), rng);
        const Labeling other = compute_gamma(g, order);
        unique = other.gamma == lab.gamma && validate_labeling(g, other).ok();
    }
    out << "uniqueness " << (unique ? "ok" : "FAILED") << " (" << permutations << " scan orders)\n";
    ok = ok && unique;

    try {
        const PathBoundReport bounds = path_bounds(g);
        bool within = true;
        for (VertexIndex v = 0; v < g.size(); ++v) {
            const std::size_t b = bounds.longest[v];
            if (gamma_prime(g, lab, v) > b || (lab.is_finite(v) && lab.at(v).value() > b)) {
                out << "  bound violated at " << g.id(v) << '\n';
                within = false;
            }
        }
        out << "bounds " << (within ? "ok" : "FAILED") << " (longest path " << bounds.bound << ")\n";
        ok = ok && within;
    } catch (const BudgetExceeded&) {
        out << "bounds skipped (path search budget exceeded)\n";
    }

    try {
        auto labels = oracle_classify(g, game.tokens, oracle_budget);
        std::size_t mismatches = 0;
        for (const auto& [pos, outcome] : labels) {
            if (classify(g, lab, pos) != outcome) ++mismatches;
        }
        out << "oracle " << (mismatches == 0 ? "ok" : "FAILED") << " (" << labels.size() << " states";
        if (mismatches) out << ", " << mismatches << " mismatches";
        out << ")\n";
        ok = ok && mismatches == 0;
    } catch (const BudgetExceeded&) {
        out << "oracle skipped (state budget exceeded)\n";
    }
    return ok ? kExitOk : kExitDomainError;
}

int cmd_simulate(const Game& game, const SimulationOptions& options, std::ostream& out)
{
    const Labeling lab = compute_gamma(game.graph);
    const Simulation sim = simulate(game.graph, lab, game.tokens, options);
    out << render_transcript(game.graph, sim.transcript);
    out << "result=" << to_string(sim.result) << " plies=" << sim.transcript.size();
    if (options.adversary == Adversary::Exhaustive) out << " states=" << sim.states;
    out << '\n';
    return kExitOk;
}

int cmd_export(const Game& game, ExportFormat format, std::ostream& out)
{
    const Labeling lab = compute_gamma(game.graph);
    out << export_graph(game.graph, &lab, format, &game.tokens);
    return kExitOk;
}

int cmd_play(const Game& game, bool engine_first, std::istream& in, std::ostream& out)
{
    const GameGraph& g = game.graph;
    const Labeling lab = compute_gamma(g);
    Position pos = game.tokens;
    Position previous;
    std::optional<Move> last;
    bool engine_turn = engine_first;

    out << "tokens: " << pos.render(g) << " (" << to_string(classify(g, lab, pos)) << ")\n";
    for (;;) {
        if (legal_moves(g, pos).empty()) {
            out << (engine_turn ? "engine cannot move: you win\n" : "you cannot move: engine wins\n");
            return kExitOk;
        }
        if (engine_turn) {
            auto m = engine_move(g, lab, pos, last ? &previous : nullptr, last);
            out << "engine: " << g.id(m->from) << "->" << g.id(m->to) << " (" << to_string(m->kind) << ")\n";
            pos = pos.moved(m->from, m->to);
            last.reset();
            out << "tokens: " << pos.render(g) << '\n';
            engine_turn = false;
            continue;
        }
        out << "move> " << std::flush;
        std::string line;
        if (!std::getline(in, line)) return kExitOk;
        std::istringstream words(line);
        std::string from, to, extra;
        words >> from >> to;
        if (from == "quit") return kExitOk;
        if (to.empty() || (words >> extra)) {
            out << "enter a move as '<from> <to>', or 'quit'\n";
            continue;
        }
        auto u = g.find(from);
        auto v = g.find(to);
        if (!u || !v || !pos.contains(*u) || !g.has_edge(*u, *v)) {
            out << "illegal move\n";
            continue;
        }
        previous = pos;
        last = Move{*u, *v, MoveKind::Losing};
        pos = pos.moved(*u, *v);
        engine_turn = true;
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Solver for impartial token games on cyclic digraphs", "loopy"};
    app.require_subcommand(1);

    std::string file;
    auto add_command = [&](const std::string& name, const std::string& help) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("file", file, "game description (DSL or JSON export), '-' for stdin")->required();
        return cmd;
    };

    auto* gamma = add_command("gamma", "print gamma value and counter of every vertex");
    auto* classify_cmd = add_command("classify", "classify the token position as P, N or D");
    auto* bestmove = add_command("bestmove", "print the engine's move from the token position");

    std::size_t oracle_budget = 2'000'000;
    auto* oracle = add_command("oracle", "classify the token position by retrograde analysis");
    oracle->add_option("--budget", oracle_budget, "maximum number of states")->check(CLI::PositiveNumber);

    std::uint64_t seed = 1;
    std::size_t permutations = 20;
    auto* check = add_command("check", "validate the labeling and cross-check bounds and the oracle");
    check->add_option("--seed", seed, "seed for scan-order permutations");
    check->add_option("--permutations", permutations, "number of random scan orders");
    check->add_option("--budget", oracle_budget, "maximum number of oracle states")->check(CLI::PositiveNumber);

    SimulationOptions sim;
    std::string adversary = "random";
    std::string side = "first";
    bool no_counters = false;
    auto* simulate_cmd = add_command("simulate", "play the engine against an adversary");
    simulate_cmd->add_option("--adversary", adversary, "exhaustive or random")
        ->check(CLI::IsMember({"exhaustive", "random", "seeded-random"}));
    simulate_cmd->add_option("--seed", sim.seed, "random adversary seed");
    simulate_cmd->add_option("--max-plies", sim.max_plies, "ply limit before a draw is declared")
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--engine-side", side, "first or second")->check(CLI::IsMember({"first", "second"}));
    simulate_cmd->add_flag("--no-counters", no_counters, "ignore the counter function");

    bool engine_first = false;
    auto* play = add_command("play", "play against the engine in the terminal");
    play->add_flag("--engine-first", engine_first, "let the engine make the first move");

    std::string format = "dot";
    auto* export_cmd = add_command("export", "export the graph with its gamma values");
    export_cmd->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        const Game game = read_game(file, in);
        if (gamma->parsed()) return cmd_gamma(game, out);
        if (classify_cmd->parsed()) return cmd_classify(game, out);
        if (bestmove->parsed()) return cmd_bestmove(game, out);
        if (oracle->parsed()) return cmd_oracle(game, oracle_budget, out);
        if (check->parsed()) return cmd_check(game, seed, permutations, oracle_budget, out);
        if (simulate_cmd->parsed()) {
            sim.adversary = adversary == "exhaustive" ? Adversary::Exhaustive : Adversary::SeededRandom;
            sim.engine_side = side == "first" ? Side::First : Side::Second;
            sim.use_counters = !no_counters;
            return cmd_simulate(game, sim, out);
        }
        if (play->parsed()) return cmd_play(game, engine_first, in, out);
        if (export_cmd->parsed()) return cmd_export(game, format == "json" ? ExportFormat::Json : ExportFormat::Dot, out);
    } catch (const GameError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    return kExitUsage;
}

} // namespace loopy
