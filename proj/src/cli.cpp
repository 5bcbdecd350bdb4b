#include "ptlab/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "ptlab/classical.hpp"
#include "ptlab/games.hpp"
#include "ptlab/quantum.hpp"
#include "ptlab/serialize.hpp"

namespace ptlab {

namespace {

using nlohmann::ordered_json;

struct CliError {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CliError{2, "cannot read file " + path};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Game load_game(const std::string& ref) {
    if (ref == "full") {
        return builtin_full_game();
    }
    if (ref == "simple") {
        return builtin_simple_game();
    }
    Game g;
    try {
        g = parse_game(read_file(ref));
    } catch (const GameParseError& e) {
        throw CliError{2, std::string("invalid game file: ") + e.what()};
    }
    const std::vector<std::string> problems = validate(g);
    if (!problems.empty()) {
        std::string msg = "invalid game " + ref + ":";
        for (const std::string& p : problems) {
            msg += "\n  " + p;
        }
        throw CliError{2, msg};
    }
    return g;
}

std::uint64_t parse_seed(const std::string& text) {
    try {
        std::size_t used = 0;
        std::uint64_t value = 0;
        if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) {
            value = std::stoull(text.substr(2), &used, 16);
            used += 2;
        } else {
            value = std::stoull(text, &used, 10);
        }
        if (used != text.size()) {
            throw CliError{2, "malformed seed " + text};
        }
        return value;
    } catch (const std::logic_error&) {
        throw CliError{2, "malformed seed " + text};
    }
}

unsigned resolve_threads(int flag_value) {
    if (flag_value > 0) {
        return static_cast<unsigned>(flag_value);
    }
    if (const char* env = std::getenv("PTLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return static_cast<unsigned>(n);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct Output {
    std::string format; // "table" or "json"
    std::string command;
    std::string game;
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    void emit(std::ostream& out, const ordered_json& results,
              const std::string& table) const {
        if (format == "json") {
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
            ordered_json report = {{"command", command},
                                   {"game", game},
                                   {"version", kVersion},
                                   {"wall_time_ms", ms},
                                   {"results", results}};
            out << report.dump(2) << "\n";
        } else {
            out << table;
        }
    }
};

std::string game_summary_line(const Game& g) {
    std::ostringstream line;
    line << g.name << ": " << g.pairs.size() << " pairs, " << g.predicate_count()
         << " predicates, " << contextual_variables(g, Party::alice).size()
         << " contextual variables per party";
    return line.str();
}

int cmd_list(const Output& output, std::ostream& out) {
    ordered_json games = ordered_json::array();
    std::string table;
    for (const Game& g : {builtin_full_game(), builtin_simple_game()}) {
        games.push_back({{"name", g.name},
                         {"pairs", g.pairs.size()},
                         {"predicates", g.predicate_count()},
                         {"variables_per_party",
                          contextual_variables(g, Party::alice).size()}});
        table += game_summary_line(g) + "\n";
    }
    output.emit(out, {{"games", games}}, table);
    return 0;
}

int cmd_classical(const Output& output, std::ostream& out, const Game& g,
                  const std::string& mode, unsigned threads) {
    ordered_json results;
    std::ostringstream table;
    results["mode"] = mode;
    if (mode == "feasibility") {
        const FeasibilityResult feas = perfect_feasibility(g);
        if (const auto* cert = std::get_if<InfeasibilityCertificate>(&feas)) {
            results["feasible"] = false;
            results["certificate"] = to_json(g, *cert);
            table << "infeasible\ncertificate:";
            for (const std::string& id : cert->predicate_ids) {
                table << " " << id;
            }
            table << "\n";
        } else {
            const auto& witness = std::get<StrategyPair>(feas);
            results["feasible"] = true;
            results["witness"] = to_json(witness);
            table << "feasible\nalice: " << witness.alice.bits_hex()
                  << "\nbob: " << witness.bob.bits_hex() << "\n";
        }
    } else {
        const OptimalResult r = mode == "optimal" ? optimal_value(g, threads)
                                                  : noncontextual_optimal(g);
        results["value"] = r.value.str_over(g.common_weight_denominator());
        results["witness"] = to_json(r.witness);
        table << "value: " << r.value.str_over(g.common_weight_denominator())
              << "\nalice: " << r.witness.alice.bits_hex()
              << "\nbob: " << r.witness.bob.bits_hex() << "\n";
    }
    output.emit(out, results, table.str());
    return 0;
}

std::string format_probability(double p) {
    std::ostringstream s;
    s.precision(12);
    s << p;
    return s.str();
}

int cmd_quantum(const Output& output, std::ostream& out, const Game& g,
                const std::string& action, const std::string& pair_ref) {
    const QuantumSetup setup = builtin_setup();
    const std::vector<std::string> problems = validate_setup(setup, g);
    if (!problems.empty()) {
        std::string msg = "built-in setup does not cover game " + g.name + ":";
        for (const std::string& p : problems) {
            msg += "\n  " + p;
        }
        throw CliError{2, msg};
    }

    ordered_json results;
    std::ostringstream table;
    results["action"] = action;
    if (action == "verify") {
        const std::vector<StabilizerCheck> checks = verify_stabilizers(setup);
        results["relations"] = to_json(checks);
        bool all = true;
        for (const StabilizerCheck& c : checks) {
            table << c.relation << ": eigenvalue " << (c.eigenvalue > 0 ? "+1" : "-1")
                  << ", residual " << format_probability(c.residual) << ", "
                  << (c.pass() ? "ok" : "FAIL") << "\n";
            all = all && c.pass();
        }
        results["all_pass"] = all;
        table << (all ? "all relations hold\n" : "some relations FAILED\n");
    } else if (action == "value") {
        const double v = quantum_value(setup, g);
        results["value"] = v;
        table << "value: " << format_probability(v) << "\n";
    } else { // distribution
        const auto pair_index = g.find_pair(pair_ref);
        if (!pair_index) {
            throw CliError{2, "unknown pair \"" + pair_ref + "\" in game " + g.name};
        }
        const RoundDistribution dist = round_distribution(setup, g, *pair_index);
        results["distribution"] = to_json(g, dist);
        double total = 0.0;
        for (std::size_t o = 0; o < 16; ++o) {
            const std::array<int, 4> a = outcome_answers(o);
            table << "(" << (a[0] > 0 ? "+1" : "-1") << "," << (a[1] > 0 ? "+1" : "-1")
                  << "," << (a[2] > 0 ? "+1" : "-1") << "," << (a[3] > 0 ? "+1" : "-1")
                  << ") " << format_probability(dist.probabilities[o]) << "\n";
            total += dist.probabilities[o];
        }
        table << "total " << format_probability(total) << "\n";
    }
    output.emit(out, results, table.str());
    return 0;
}

StrategyPair load_strategy_file(const Game& g, const std::string& path) {
    const std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CliError{2, std::string("invalid strategy file: ") + e.what()};
    }
    if (!j.is_object() || !j.contains("alice") || !j.contains("bob")) {
        throw CliError{2, "strategy file needs \"alice\" and \"bob\" hex bit vectors"};
    }
    for (const auto& item : j.items()) {
        if (item.key() != "alice" && item.key() != "bob" && item.key() != "game") {
            throw CliError{2, "strategy file: unknown key \"" + item.key() + "\""};
        }
    }
    if (j.contains("game") && j["game"].get<std::string>() != g.name) {
        throw CliError{2, "strategy file targets game \"" +
                              j["game"].get<std::string>() + "\", not \"" + g.name +
                              "\""};
    }
    try {
        return {strategy_from_hex(g, Party::alice, j["alice"].get<std::string>()),
                strategy_from_hex(g, Party::bob, j["bob"].get<std::string>())};
    } catch (const std::invalid_argument& e) {
        throw CliError{2, std::string("invalid strategy file: ") + e.what()};
    }
}

int cmd_play(const Output& output, std::ostream& out, const Game& g,
             const std::string& strategy_ref, std::uint64_t rounds,
             const std::string& seed_text, unsigned threads) {
    const std::uint64_t seed = parse_seed(seed_text);
    MatchTally tally;
    if (strategy_ref == "quantum") {
        const QuantumSetup setup = builtin_setup();
        const std::vector<std::string> problems = validate_setup(setup, g);
        if (!problems.empty()) {
            throw CliError{2, "built-in setup does not cover game " + g.name};
        }
        tally = play_match(g, setup, rounds, seed);
    } else if (strategy_ref == "classical-optimal") {
        tally = play_match(g, optimal_value(g, threads).witness, rounds, seed);
    } else {
        tally = play_match(g, load_strategy_file(g, strategy_ref), rounds, seed);
    }

    ordered_json results = to_json(g, tally);
    results["strategy"] = strategy_ref;
    std::ostringstream table;
    table << "rounds: " << tally.rounds << "\nwins: " << tally.wins
          << "\nwin rate: " << format_probability(tally.win_rate()) << "\n";
    for (std::size_t p = 0; p < tally.per_pair.size(); ++p) {
        table << pair_name(g, p) << ": " << tally.per_pair[p].wins << "/"
              << tally.per_pair[p].plays << "\n";
    }
    output.emit(out, results, table.str());
    return 0;
}

int cmd_validate(const Output& output, std::ostream& out, const std::string& path) {
    Game g;
    try {
        g = parse_game(read_file(path));
    } catch (const GameParseError& e) {
        throw CliError{2, std::string("parse error: ") + e.what()};
    }
    const std::vector<std::string> problems = validate(g);
    ordered_json results = {{"valid", problems.empty()}, {"violations", problems}};
    std::string table;
    if (problems.empty()) {
        table = "ok\n";
    } else {
        for (const std::string& p : problems) {
            table += p + "\n";
        }
    }
    output.emit(out, results, table);
    return problems.empty() ? 0 : 2;
}

std::string join_args(const std::vector<std::string>& args) {
    std::string echo = "ptlab";
    for (const std::string& a : args) {
        echo += " " + a;
    }
    return echo;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"two-player parity-game laboratory: exact classical values, "
                 "unwinnability certificates, and the entangled strategy"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string format = "table";
    int threads_flag = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "json"}));
        sub->add_option("--threads", threads_flag,
                        "worker threads (default: PTLAB_THREADS or all cores)");
    };

    CLI::App* list = app.add_subcommand("list", "list built-in games");
    add_common(list);

    std::string game_ref;
    std::string mode = "optimal";
    CLI::App* classical =
        app.add_subcommand("classical", "optimal classical play and feasibility");
    classical->add_option("game", game_ref, "built-in name or game file")->required();
    classical->add_option("--mode", mode, "optimal | noncontextual | feasibility")
        ->check(CLI::IsMember({"optimal", "noncontextual", "feasibility"}));
    add_common(classical);

    std::string action = "verify";
    std::string pair_ref;
    CLI::App* quantum =
        app.add_subcommand("quantum", "verify and score the entangled strategy");
    quantum->add_option("game", game_ref, "built-in name or game file")->required();
    quantum->add_option("--action", action, "verify | value | distribution")
        ->check(CLI::IsMember({"verify", "value", "distribution"}));
    quantum->add_option("--pair", pair_ref, "question pair, e.g. Xz:Xz");
    add_common(quantum);

    std::string strategy_ref = "quantum";
    std::uint64_t rounds = 10000;
    std::string seed_text = "0";
    CLI::App* play = app.add_subcommand("play", "referee a seeded match");
    play->add_option("game", game_ref, "built-in name or game file")->required();
    play->add_option("--strategy", strategy_ref,
                     "quantum | classical-optimal | strategy file");
    play->add_option("--rounds", rounds, "number of rounds");
    play->add_option("--seed", seed_text, "64-bit seed, decimal or 0x hex");
    add_common(play);

    std::string file_ref;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "check a game file against the format");
    validate_cmd->add_option("file", file_ref, "game file")->required();
    add_common(validate_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    Output output;
    output.format = format;
    output.command = join_args(args);

    try {
        if (list->parsed()) {
            return cmd_list(output, out);
        }
        if (validate_cmd->parsed()) {
            output.game = file_ref;
            return cmd_validate(output, out, file_ref);
        }
        const Game g = load_game(game_ref);
        output.game = g.name;
        const unsigned threads = resolve_threads(threads_flag);
        if (classical->parsed()) {
            return cmd_classical(output, out, g, mode, threads);
        }
        if (quantum->parsed()) {
            if (action == "distribution" && pair_ref.empty()) {
                throw CliError{2, "--action distribution needs --pair"};
            }
            return cmd_quantum(output, out, g, action, pair_ref);
        }
        if (play->parsed()) {
            return cmd_play(output, out, g, strategy_ref, rounds, seed_text, threads);
        }
        throw CliError{2, "no subcommand"};
    } catch (const CliError& e) {
        err << e.message << "\n";
        return e.code;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace ptlab
