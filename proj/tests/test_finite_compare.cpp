#include <algorithm>

#include "doctest.h"
#include "ocnwb/finite_compare.hpp"
#include "ocnwb/games.hpp"
#include "support/nets.hpp"
#include "support/oracles.hpp"

using namespace ocnwb;

namespace {

bool has_edge(const Net& n, const std::string& p, const std::string& a, const std::string& q) {
    return std::any_of(n.trans.begin(), n.trans.end(), [&](const Transition& t) {
        return n.state_name(t.src) == p && t.label == a && n.state_name(t.dst) == q;
    });
}

Net pump() {
    Net n(NetKind::ocn, "Pump");
    n.add("q", "tau", 1, "q");
    n.add("q", "a", -1, "q");
    return n;
}

}  // namespace

TEST_CASE("weak closure") {
    auto loop = fixtures::fs_loop();
    auto c = weak_closure(loop);
    CHECK(c.trans.size() == 2);
    CHECK(has_edge(c, "p", "tau", "p"));
    CHECK(has_edge(c, "p", "a", "p"));

    Net chain(NetKind::fs, "Ch");
    chain.add("q", "tau", 0, "r");
    chain.add("r", "a", 0, "s");
    CHECK(has_edge(weak_closure(chain), "q", "a", "s"));

    Net cyc(NetKind::fs, "Cy");
    cyc.add("x", "tau", 0, "y");
    cyc.add("y", "tau", 0, "z");
    cyc.add("z", "tau", 0, "x");
    cyc.add("z", "a", 0, "w");
    auto cc = weak_closure(cyc);
    for (const char* s : {"x", "y", "z"}) CHECK(has_edge(cc, s, "a", "w"));
}

TEST_CASE("weak closure matches transitive closure oracle") {
    auto r = gen::rng(41);
    for (int round = 0; round < 100; ++round) {
        auto fs = gen::fs(r, 4, 7, true);
        auto c = weak_closure(fs);
        auto reach = oracle::silent_reach(fs);
        for (int s = 0; s < static_cast<int>(fs.num_states()); ++s)
            for (int t = 0; t < static_cast<int>(fs.num_states()); ++t) {
                CHECK(has_edge(c, fs.state_name(s), "tau", fs.state_name(t)) == (reach.count({s, t}) != 0));
                for (const auto& a : {"a", "b"}) {
                    bool want = false;
                    for (const auto& x : fs.trans)
                        if (x.label == a && reach.count({s, x.src}) && reach.count({x.dst, t})) want = true;
                    CHECK(has_edge(c, fs.state_name(s), a, fs.state_name(t)) == want);
                }
            }
    }
}

TEST_CASE("capped net") {
    Net n(NetKind::ocn, "N");
    n.add("q", "a", 1, "q");
    auto c = capped_net(n, 2);
    CHECK(c.kind == NetKind::fs);
    CHECK(c.num_states() == 3);
    CHECK(c.trans.size() == 3);
    CHECK(has_edge(c, "q@0", "a", "q@1"));
    CHECK(has_edge(c, "q@1", "a", "q@2"));
    CHECK(has_edge(c, "q@2", "a", "q@2"));
    CHECK(capped_state("q", 4) == "q@4");
}

TEST_CASE("finite weak simulation") {
    auto loop = fixtures::fs_loop();
    CHECK(fs_weak_sim(loop, 0, loop, 0));
    Net none(NetKind::fs, "E");
    none.add("e", "b", 0, "e");
    CHECK_FALSE(fs_weak_sim(loop, 0, none, 0));

    Net hidden(NetKind::fs, "H");
    hidden.add("h", "tau", 0, "k");
    hidden.add("k", "a", 0, "h");
    CHECK(fs_weak_sim(loop, 0, hidden, 0));
}

TEST_CASE("finite weak simulation agrees with the game on closures") {
    auto r = gen::rng(42);
    for (int round = 0; round < 60; ++round) {
        auto a = gen::fs(r, 4, 7, true, "A");
        auto b = gen::fs(r, 4, 7, true, "B");
        auto ca = weak_closure(a), cb = weak_closure(b);
        // A refutation on finite systems never needs more rounds than there are state pairs.
        const int depth = static_cast<int>(a.num_states() * b.num_states()) + 1;
        for (int s = 0; s < static_cast<int>(a.num_states()); ++s)
            for (int t = 0; t < static_cast<int>(b.num_states()); ++t) {
                bool sim = fs_weak_sim(a, s, b, t);
                CHECK(sim == brute_force_game(ca, cb, {s, 0}, {t, 0}, depth, 0));
                CHECK(sim == oracle::fs_strong_sim(ca, s, cb, t));
            }
    }
}

TEST_CASE("ocn simulates fs") {
    auto loop = fixtures::fs_loop();
    CHECK_FALSE(ocn_simulates_fs(fixtures::family(1), 0, 0, loop, 0));
    CHECK(ocn_simulates_fs(pump(), 0, 0, loop, 0));
    // The pump answers every a by one silent increment and one decrement.
    CHECK(brute_force_game(loop, pump(), {0, 0}, {0, 0}, 10, 12, true));

    Net dead(NetKind::fs, "D");
    dead.add_state("d");
    CHECK(ocn_simulates_fs(fixtures::x_loop(), 0, 0, dead, 0));
    CHECK(sufficient_cap(2, 3) == (2 * 2 + 1) * (2 * 3 + 1));
}

TEST_CASE("fs simulates ocn") {
    Net dead(NetKind::ocn, "D");
    dead.add_state("d");
    CHECK(fs_simulates_ocn(fixtures::fs_loop(), 0, dead, 0, 5));

    Net nob(NetKind::fs, "B");
    nob.add("s", "b", 0, "s");
    for (int m = 0; m <= 4; ++m) CHECK_FALSE(fs_simulates_ocn(nob, 0, fixtures::x_loop(), 0, m));

    Net dec(NetKind::ocn, "Dec");
    dec.add("p", "a", -1, "p");
    for (int k = 0; k <= 4; ++k) {
        auto chain = fixtures::fs_chain(k);
        auto table = fs_ocn_table(chain, dec);
        CHECK(table.t[0][0] == k);
        for (int m = 0; m <= k + 2; ++m) {
            CHECK(fs_simulates_ocn(chain, 0, dec, 0, m) == (m <= k));
            CHECK(fs_simulates_ocn(chain, 0, dec, 0, m) == brute_force_game(dec, chain, {0, m}, {0, 0}, k + 3, 0));
        }
    }
    auto table = fs_ocn_table(fixtures::fs_loop(), dec);
    CHECK(table.t[0][0] == TT_INFINITE);
    CHECK(table.report().rfind("TABLE cutoff=1\n", 0) == 0);
}

TEST_CASE("capped net facts for sampled caps") {
    auto r = gen::rng(43);
    for (int round = 0; round < 30; ++round) {
        auto n = gen::ocn(r, 3, 5, true);
        for (int l = 1; l <= 4; ++l) {
            auto c = capped_net(n, l);
            for (int q = 0; q < static_cast<int>(n.num_states()); ++q)
                for (int m = 0; m <= 4; ++m) {
                    const int hat = c.state(capped_state(n.state_name(q), std::min(m, l)));
                    const int hat_next = c.state(capped_state(n.state_name(q), std::min(m + 1, l)));
                    CHECK(ocn_simulates_fs(n, q, m, c, hat));
                    CHECK(brute_force_game(n, c, {q, m}, {hat, 0}, l, 0, true));
                    CHECK(fs_weak_sim(c, hat, c, hat_next));
                }
        }
    }
}

TEST_CASE("counter-free nets reduce to finite simulation") {
    auto r = gen::rng(44);
    for (int round = 0; round < 60; ++round) {
        auto f = gen::fs(r, 3, 5, true, "F");
        auto g = gen::fs(r, 3, 5, true, "G");
        Net n(NetKind::ocn, "N");
        for (const auto& s : g.states()) n.add_state(s);
        for (const auto& t : g.trans) n.add(t.src, t.label, 0, t.dst);
        for (int s = 0; s < static_cast<int>(f.num_states()); ++s)
            for (int t = 0; t < static_cast<int>(g.num_states()); ++t) {
                CHECK(ocn_simulates_fs(n, t, 2, f, s) == fs_weak_sim(f, s, g, t));
                CHECK(fs_simulates_ocn(f, s, n, t, 2) == fs_weak_sim(g, t, f, s));
            }
    }
}

TEST_CASE("threshold verdicts are downward closed") {
    auto r = gen::rng(45);
    for (int round = 0; round < 60; ++round) {
        auto f = gen::fs(r, 3, 5, true, "F");
        auto n = gen::ocn(r, 3, 5, true, "N");
        for (int p = 0; p < static_cast<int>(n.num_states()); ++p)
            for (int s = 0; s < static_cast<int>(f.num_states()); ++s) {
                bool prev = true;
                for (int m = 0; m <= 8; ++m) {
                    bool v = fs_simulates_ocn(f, s, n, p, m);
                    CHECK((prev || !v));
                    prev = v;
                }
            }
    }
}
