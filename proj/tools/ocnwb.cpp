// ocnwb: command-line front end for the simulation and trace checks.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "ocnwb/finite_compare.hpp"
#include "ocnwb/games.hpp"
#include "ocnwb/random_nets.hpp"
#include "ocnwb/reduction.hpp"
#include "ocnwb/text_format.hpp"
#include "ocnwb/traces.hpp"

using namespace ocnwb;

namespace {

constexpr int EXIT_UNKNOWN = 2;
constexpr int EXIT_INAPPLICABLE = 3;
constexpr int EXIT_USAGE = 64;
constexpr int EXIT_UNKNOWN_STATE = 65;

struct Options {
    int alpha_max = 64;
    int beta = BETA_INFINITE;
    int cap = 64;
    bool machine = false;
    bool allow_reserved = false;
    unsigned seed = 1;
};

bool color() {
    const char* v = std::getenv("OCNWB_COLOR");
    return v && std::string(v) == "1";
}

std::string paint(const std::string& s, bool good) {
    if (!color()) return s;
    return std::string(good ? "\033[32m" : "\033[31m") + s + "\033[0m";
}

Net load(const Options& o, const std::string& spec) { return load_net(spec, {o.allow_reserved}); }

// Human output mirrors the report format; machine output is flat key=value.
void print_verdict(const Options& o, const Verdict& v) {
    if (!o.machine) {
        std::string r = v.report();
        auto nl = r.find('\n');
        std::cout << "VERDICT " << paint(verdict_name(v.kind), v.kind == VerdictKind::simulates)
                  << r.substr(nl);
        return;
    }
    std::cout << "verdict=" << verdict_name(v.kind) << "\n";
    if (v.rank) std::cout << "rank=" << v.rank->str() << "\n";
    for (const auto& [k, val] : v.info) std::cout << k << "=" << val << "\n";
    if (v.witness) {
        int i = 0;
        for (const auto& s : v.witness->steps)
            std::cout << "play." << i++ << "=" << (s.spoiler ? "S " : "D ") << s.from << " " << s.from_counter << " "
                      << s.label << " " << s.to << " " << s.to_counter << "\n";
        std::cout << "terminal=" << v.witness->terminal << "\n";
    }
}

int verdict_code(VerdictKind k) {
    switch (k) {
        case VerdictKind::simulates: return 0;
        case VerdictKind::not_simulates: return 1;
        case VerdictKind::unknown: return EXIT_UNKNOWN;
    }
    return EXIT_UNKNOWN;
}

int print_bool(const Options& o, const std::string& key, bool value) {
    if (o.machine) std::cout << key << "=" << (value ? "true" : "false") << "\n";
    else std::cout << "VERDICT " << paint(value ? "SIMULATES" : "NOT_SIMULATES", value) << "\n";
    return value ? 0 : 1;
}

struct ConfigArg {
    std::string file, state;
    int counter = 0;
};

void add_config(CLI::App* c, ConfigArg& a, const std::string& who, bool counter = true) {
    c->add_option(who + "-net", a.file, who + " net file (path or path:name)")->required();
    c->add_option(who + "-state", a.state, who + " state")->required();
    if (counter) c->add_option(who + "-counter", a.counter, who + " counter")->required()->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak simulation and trace checks for one-counter nets"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--alpha-max", o.alpha_max, "largest approximant level tried")->check(CLI::NonNegativeNumber);
    app.add_option("--beta", o.beta, "omega budget for rank and approximant (-1: unbounded)");
    app.add_option("--cap", o.cap, "counter cap for fixpoints and rank search")->check(CLI::PositiveNumber);
    app.add_flag("--machine", o.machine, "key=value output");
    app.add_option("--seed", o.seed, "seed for generated nets");
    app.add_flag("--allow-reserved", o.allow_reserved, "accept generated names containing '@'");

    int rc = 0;
    auto* check = app.add_subcommand("check", "decide a relation")->require_subcommand(1);
    auto* build = app.add_subcommand("build", "emit a construction")->require_subcommand(1);
    auto* solve = app.add_subcommand("solve", "run a game solver")->require_subcommand(1);
    auto* oracle = app.add_subcommand("oracle", "run a brute-force oracle")->require_subcommand(1);

    ConfigArg lhs, rhs;
    bool weak = false;
    long long max_nodes = 0;

    // check
    auto* weak_sim = check->add_subcommand("weak-sim", "pm weakly simulated by qn (two ocns)");
    auto* strong_sim = check->add_subcommand("strong-sim", "pm simulated by qn (ocn/fs vs ocn/omega/fs)");
    for (auto* c : {weak_sim, strong_sim}) {
        add_config(c, lhs, "spoiler");
        add_config(c, rhs, "duplicator");
    }
    auto run_sim = [&](bool is_weak) {
        Net a = load(o, lhs.file), b = load(o, rhs.file);
        Configuration sp{a.state(lhs.state), lhs.counter}, dp{b.state(rhs.state), rhs.counter};
        Budgets bud{o.alpha_max, o.cap};
        Verdict v = is_weak ? weak_sim_check(a, sp, b, dp, bud) : strong_sim_check(a, sp, b, dp, bud);
        print_verdict(o, v);
        rc = verdict_code(v.kind);
    };
    weak_sim->callback([&] { run_sim(true); });
    strong_sim->callback([&] { run_sim(false); });

    auto* fs_sim = check->add_subcommand("fs-sim", "ocn pm weakly simulated by fs state s");
    add_config(fs_sim, rhs, "fs", false);
    add_config(fs_sim, lhs, "ocn");
    fs_sim->callback([&] {
        Net fs = load(o, rhs.file), n = load(o, lhs.file);
        rc = print_bool(o, "simulated", fs_simulates_ocn(fs, fs.state(rhs.state), n, n.state(lhs.state), lhs.counter));
    });

    auto* ocn_sim = check->add_subcommand("ocn-sim", "fs state p weakly simulated by ocn qn");
    add_config(ocn_sim, rhs, "ocn");
    add_config(ocn_sim, lhs, "fs", false);
    ocn_sim->callback([&] {
        Net n = load(o, rhs.file), fs = load(o, lhs.file);
        rc = print_bool(o, "simulated", ocn_simulates_fs(n, n.state(rhs.state), rhs.counter, fs, fs.state(lhs.state)));
    });

    auto* trace_incl = check->add_subcommand("trace-incl", "traces of an oca configuration within an fs state");
    add_config(trace_incl, lhs, "oca");
    add_config(trace_incl, rhs, "fs", false);
    trace_incl->add_flag("--weak", weak, "ignore tau");
    trace_incl->add_option("--max-nodes", max_nodes, "abort after this many product nodes");
    trace_incl->callback([&] {
        Net a = load(o, lhs.file), b = load(o, rhs.file);
        auto v = oca_subset_fs(a, {a.state(lhs.state), lhs.counter}, b, b.state(rhs.state), weak, max_nodes);
        if (o.machine) {
            std::cout << "verdict="
                      << (v.kind == InclusionKind::included       ? "included"
                          : v.kind == InclusionKind::counterexample ? "counterexample"
                                                                    : "budget_exceeded")
                      << "\nbound=" << v.bound << "\nexplored=" << v.explored << "\n";
            if (v.kind == InclusionKind::counterexample) std::cout << "w=" << word_str(v.word) << "\n";
        } else {
            std::cout << v.report();
        }
        rc = v.kind == InclusionKind::included ? 0 : v.kind == InclusionKind::counterexample ? 1 : EXIT_UNKNOWN;
    });

    // build
    std::string f1, f2;
    int level = 1, bound = 16, len = 6;
    auto* reduce = build->add_subcommand("reduce", "guarded omega-net of the weak steps");
    reduce->add_option("net", f1)->required();
    reduce->callback([&] {
        Net n = load(o, f1);
        std::cout << format_net(build_guarded_omega(n));
    });

    auto* normalize_cmd = build->add_subcommand("normalize", "unit-step pair (M', N') from M and a guarded net");
    normalize_cmd->add_option("spoiler", f1)->required();
    normalize_cmd->add_option("guarded", f2)->required();
    normalize_cmd->callback([&] {
        auto r = normalize(load(o, f1), load(o, f2));
        std::cout << format_net(r.spoiler, r.header()) << format_net(r.duplicator);
    });

    auto* cap_cmd = build->add_subcommand("cap", "l-capped fs of an ocn");
    cap_cmd->add_option("net", f1)->required();
    cap_cmd->add_option("l", level)->required()->check(CLI::PositiveNumber);
    cap_cmd->callback([&] { std::cout << format_net(capped_net(load(o, f1), level)); });

    auto* closure = build->add_subcommand("closure", "weak closure of an fs");
    closure->add_option("net", f1)->required();
    closure->callback([&] { std::cout << format_net(weak_closure(load(o, f1))); });

    std::string d_label;
    auto* wfa_enc = build->add_subcommand("wfa-encode", "ocn encoding of a weighted automaton");
    wfa_enc->add_option("net", f1)->required();
    wfa_enc->add_option("--d-label", d_label, "name of the draining action");
    wfa_enc->callback([&] {
        Net a = load(o, f1);
        auto e = wfa_to_ocn(a, d_label);
        std::cout << format_net(e.net, {"encoding of " + a.name + " start=" + a.state_name(e.start.state) + " 0 d=" +
                                        e.d_label});
    });

    auto* step_nets = build->add_subcommand("step-nets", "step nets (N_S, N_D) for an M table");
    step_nets->add_option("n", f1)->required();
    step_nets->add_option("nprime", f2)->required();
    step_nets->add_option("--level", level, "approximant level k")->check(CLI::PositiveNumber);
    step_nets->add_option("--bound", bound, "search bound for M entries")->check(CLI::NonNegativeNumber);
    step_nets->callback([&] {
        Net n = load(o, f1), np = load(o, f2);
        auto tab = compute_m_table(n, np, level, bound);
        std::vector<std::string> h;
        for (std::size_t p = 0; p < tab.spoiler_states.size(); ++p)
            for (std::size_t q = 0; q < tab.dup_states.size(); ++q)
                h.push_back("M " + tab.spoiler_states[p] + " " + tab.dup_states[q] + " " +
                            format_delta(tab.entries[p][q]));
        for (const auto& d : tab.diagnostics) h.push_back("warning " + d);
        auto sn = build_step_nets(n, np, tab);
        std::cout << format_net(sn.spoiler, h) << format_net(sn.duplicator);
    });

    std::string kind_str = "ocn";
    RandomShape shape;
    auto* random_cmd = build->add_subcommand("random", "random net for test corpora");
    random_cmd->add_option("--kind", kind_str, "net kind");
    random_cmd->add_option("--states", shape.states)->check(CLI::PositiveNumber);
    random_cmd->add_option("--transitions", shape.transitions)->check(CLI::NonNegativeNumber);
    random_cmd->add_flag("--silent", shape.silent, "allow tau");
    random_cmd->callback([&] {
        std::mt19937 rng(o.seed);
        std::cout << format_net(random_net(rng, kind_from_name(kind_str), shape, "R" + std::to_string(o.seed)),
                                {"seed " + std::to_string(o.seed)});
    });

    // solve
    int alpha = 0, m_max = -1, n_max = -1;
    auto* rank = solve->add_subcommand("rank", "Spoiler rank below w^2 (--cap bounds Spoiler's counter)");
    add_config(rank, lhs, "spoiler");
    add_config(rank, rhs, "duplicator");
    rank->callback([&] {
        Net a = load(o, lhs.file), b = load(o, rhs.file);
        auto r = rank_solver(a, b, {a.state(lhs.state), lhs.counter}, {b.state(rhs.state), rhs.counter}, o.beta, o.cap);
        std::cout << (o.machine ? "rank=" : "") << r.str() << "\n";
        rc = r.infinite ? 0 : 1;
    });

    auto* approx = solve->add_subcommand("approximant", "threshold grid of an approximant");
    approx->add_option("spoiler", f1)->required();
    approx->add_option("duplicator", f2)->required();
    approx->add_option("--alpha", alpha, "level")->check(CLI::NonNegativeNumber);
    approx->add_option("--m-max", m_max, "largest Spoiler counter (default alpha)");
    approx->add_option("--n-max", n_max, "largest Duplicator counter (default alpha)");
    approx->callback([&] {
        Net a = load(o, f1), b = load(o, f2);
        Bounds bd{m_max < 0 ? alpha : m_max, n_max < 0 ? alpha : n_max};
        auto g = o.beta == BETA_INFINITE ? approximant_finite(a, b, alpha, bd)
                                         : approximant_two_dim(a, b, alpha, o.beta, bd);
        std::cout << g.report();
    });

    // oracle
    int enum_cap = 6;
    auto* game = oracle->add_subcommand("game", "brute-force alpha-round game");
    add_config(game, lhs, "spoiler");
    add_config(game, rhs, "duplicator");
    game->add_option("--alpha", alpha, "rounds")->check(CLI::NonNegativeNumber);
    game->add_option("--enum-cap", enum_cap, "largest enumerated counter")->check(CLI::NonNegativeNumber);
    game->add_flag("--weak", weak, "Duplicator answers with weak steps");
    game->callback([&] {
        Net a = load(o, lhs.file), b = load(o, rhs.file);
        bool won = brute_force_game(a, b, {a.state(lhs.state), lhs.counter}, {b.state(rhs.state), rhs.counter}, alpha,
                                    enum_cap, weak);
        rc = print_bool(o, "survives", won);
    });

    auto* traces = oracle->add_subcommand("traces", "all traces up to a length");
    add_config(traces, lhs, "net");
    traces->add_option("--max-len", len, "longest trace")->check(CLI::NonNegativeNumber);
    traces->callback([&] {
        Net a = load(o, lhs.file);
        auto ts = traces_bounded(a, {a.state(lhs.state), lhs.counter}, len);
        for (const auto& w : ts.words) std::cout << (o.machine ? "w=" : "") << word_str(w) << "\n";
    });

    // Global flags may follow the verb.
    for (auto* group : {check, build, solve, oracle}) {
        group->fallthrough();
        for (auto* leaf : group->get_subcommands({})) leaf->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return EXIT_USAGE;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const UnknownState& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_UNKNOWN_STATE;
    } catch (const RankInapplicable& e) {
        std::cerr << "rank inapplicable: " << e.what() << "\n";
        return EXIT_INAPPLICABLE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }
    return rc;
}
