#include <algorithm>
#include <set>

#include "doctest.h"
#include "ocnwb/games.hpp"
#include "ocnwb/reduction.hpp"
#include "ocnwb/text_format.hpp"
#include "support/nets.hpp"
#include "support/oracles.hpp"

using namespace ocnwb;

namespace {

bool has_trans(const Net& g, const std::string& p, const std::string& a, int guard, int delta, const std::string& q) {
    const Transition want{g.state(p), a, guard, delta, g.state(q)};
    return std::find(g.trans.begin(), g.trans.end(), want) != g.trans.end();
}

// Configurations reached by `label` followed by k-1 @b steps, with every counter kept <= cap.
std::set<oracle::Conf> chain_reach(const Net& n, Configuration c, const std::string& label, int k, int cap) {
    std::set<oracle::Conf> cur{{c.state, c.counter}};
    for (int i = 0; i < k; ++i) {
        std::set<oracle::Conf> next;
        for (auto [q, m] : cur)
            for (const auto& s : bounded_successors(n, {q, m}, std::max(cap, m)))
                if (s.label == (i == 0 ? label : std::string(LABEL_B)) && s.to.counter <= cap)
                    next.insert({s.to.state, s.to.counter});
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

TEST_CASE("direct paths") {
    Net n(NetKind::ocn, "N");
    n.add("p", "tau", 0, "q");
    auto d = direct_paths(n, n.state("p"), n.state("q"), true);
    REQUIRE(d.paths.size() == 1);
    CHECK(d.paths[0] == PathRec{n.trans[0]});

    auto self = direct_paths(n, n.state("p"), n.state("p"), true);
    CHECK(std::find(self.paths.begin(), self.paths.end(), PathRec{}) != self.paths.end());

    Net cyc(NetKind::ocn, "C");
    cyc.add("p", "tau", 0, "q");
    cyc.add("q", "tau", 1, "r");
    cyc.add("r", "tau", -1, "p");
    auto loops = direct_paths(cyc, 0, 0, true);
    REQUIRE(loops.paths.size() == 2);
    CHECK(loops.paths[0].empty() != loops.paths[1].empty());
    for (const auto& p : loops.paths) CHECK((p.empty() || p.size() == 3));

    Net vis = cyc;
    vis.add("p", "a", 0, "r");
    auto nonsilent = direct_paths(vis, 0, 2, false);
    auto silent = direct_paths(vis, 0, 2, true);
    CHECK(nonsilent.paths.size() == 2);
    CHECK(silent.paths.size() == 1);
}

TEST_CASE("guarded omega net of N1") {
    auto n1 = fixtures::family(1);
    auto g = build_guarded_omega(n1);
    CHECK(g.kind == NetKind::gomega);
    CHECK(has_trans(g, "q0", "a", 0, 0, "q1"));
    CHECK(has_trans(g, "q0", "a", 0, OMEGA, "q1"));
    CHECK(has_trans(g, "q0", "tau", 0, 0, "q0"));
    for (const auto& t : g.trans) CHECK(t.guard <= 3 * static_cast<int>(n1.num_states()) + 1);
}

TEST_CASE("guarded omega net of a tau-free net") {
    Net n(NetKind::ocn, "N");
    n.add("p", "a", 1, "q");
    n.add("q", "b", -1, "p");
    n.add("q", "a", 0, "q");
    auto g = build_guarded_omega(n);
    REQUIRE(g.trans.size() == n.trans.size());
    // Only the guard a decrement needs anyway is added.
    CHECK(has_trans(g, "p", "a", 0, 1, "q"));
    CHECK(has_trans(g, "q", "b", 1, -1, "p"));
    CHECK(has_trans(g, "q", "a", 0, 0, "q"));
}

TEST_CASE("round factor") {
    Net g(NetKind::gomega, "G");
    g.add("p", "a", 3, "q", 2);
    g.add("q", "a", -1, "p", 1);
    int gamma = 0, delta = 0;
    CHECK(round_factor(g, &gamma, &delta) == 8);
    CHECK(gamma == 2);
    CHECK(delta == 3);
}

TEST_CASE("normalize gadget for a guarded decrement") {
    Net m(NetKind::ocn, "M");
    m.add("x", "a", 0, "x");
    Net g(NetKind::gomega, "G");
    g.add("p", "a", -1, "q", 1);
    auto r = normalize(m, g);
    REQUIRE(r.k == 4);
    const auto& d = r.duplicator;
    // a-step carries the first unit, then k-1 b-steps.
    CHECK(has_trans(d, "p", "a", 0, -1, "@chain/d/0/3"));
    CHECK(has_trans(d, "@chain/d/0/3", LABEL_B, 0, 1, "@chain/d/0/2"));
    CHECK(has_trans(d, "@chain/d/0/2", LABEL_B, 0, -1, "@chain/d/0/1"));
    CHECK(has_trans(d, "@chain/d/0/1", LABEL_B, 0, 0, "q"));
    for (int mm = 0; mm <= 5; ++mm) {
        auto got = chain_reach(d, {d.state("p"), mm}, "a", r.k, 20);
        if (mm >= 1) CHECK(got == std::set<oracle::Conf>{{d.state("q"), mm - 1}});
        else CHECK(got.empty());
    }
    // Spoiler side: visible step then k-1 zero b-steps.
    const auto& s = r.spoiler;
    CHECK(has_trans(s, "x", "a", 0, 0, "@chain/s/x/3"));
    CHECK(chain_reach(s, {s.state("x"), 2}, "a", r.k, 20) == std::set<oracle::Conf>{{s.state("x"), 2}});
}

TEST_CASE("normalize omega gadget") {
    Net m(NetKind::ocn, "M");
    m.add_state("x");
    Net g(NetKind::gomega, "G");
    g.add("p", "a", OMEGA, "q", 1);
    g.add("q", "b", -2, "q");
    auto r = normalize(m, g);
    const int k = r.k;
    REQUIRE(k == 5);
    int omegas = 0;
    for (const auto& t : r.duplicator.trans)
        if (t.delta == OMEGA) {
            ++omegas;
            CHECK(t.label == LABEL_B);
            CHECK(r.duplicator.state_name(t.src) == "@chain/d/0/" + std::to_string(k - 2));
        }
    CHECK(omegas == 1);
}

TEST_CASE("normalize output uses unit deltas") {
    auto r = gen::rng(21);
    for (int round = 0; round < 60; ++round) {
        auto m = gen::ocn(r, 3, 4, true, "M");
        auto n = gen::ocn(r, 3, 5, true, "N");
        auto red = weak_to_strong(m, n);
        for (const auto* net : {&red.spoiler, &red.duplicator}) {
            CHECK(validate(*net).empty());
            for (const auto& t : net->trans) CHECK((t.delta == OMEGA || (t.delta >= -1 && t.delta <= 1)));
        }
        CHECK(red.k == 2 * red.gamma + red.delta + 1);
        for (std::size_t i = 0; i < m.num_states(); ++i)
            CHECK(red.spoiler.state_name(red.spoiler_map[i]) == m.state_name(static_cast<int>(i)));
    }
}

TEST_CASE("round correspondence") {
    auto r = gen::rng(22);
    for (int round = 0; round < 40; ++round) {
        auto n = gen::ocn(r, 3, 5, true, "N");
        auto g = build_guarded_omega(n);
        Net m(NetKind::ocn, "M");
        m.add_state("x");
        auto red = normalize(m, g);
        const int cap = 6 + red.k + 2;
        for (int p = 0; p < static_cast<int>(g.num_states()); ++p)
            for (int c = 0; c <= 6; ++c)
                for (const auto& a : g.actions()) {
                    std::set<oracle::Conf> direct;
                    for (const auto& s : bounded_successors(g, {p, c}, cap))
                        if (s.label == a) direct.insert({red.duplicator_map[s.to.state], s.to.counter});
                    auto chained = chain_reach(red.duplicator, {red.duplicator_map[p], c}, a, red.k, cap);
                    CHECK(direct == chained);
                }
    }
}

TEST_CASE("guarded net covers weak steps and vice versa") {
    auto r = gen::rng(23);
    for (int round = 0; round < 40; ++round) {
        auto n = gen::ocn(r, 3, 5, true, "N");
        auto g = build_guarded_omega(n, true);
        const int bound = 3 * static_cast<int>(n.num_states()) + 1;
        for (const auto& t : g.trans) CHECK(t.guard <= bound);
        std::vector<std::string> labels = n.actions();
        if (std::find(labels.begin(), labels.end(), "tau") == labels.end()) labels.push_back("tau");
        for (int p = 0; p < static_cast<int>(n.num_states()); ++p)
            for (int m = 0; m <= 5; ++m)
                for (const auto& a : labels) {
                    auto gsteps = bounded_successors(g, {p, m}, 12);
                    for (auto [q, v] : oracle::weak_steps(n, {p, m}, a, 12)) {
                        bool covered = std::any_of(gsteps.begin(), gsteps.end(), [&](const Step& s) {
                            return s.label == a && s.to.state == q && s.to.counter >= v;
                        });
                        CHECK(covered);
                    }
                    auto weak = oracle::weak_steps(n, {p, m}, a, 40);
                    for (const auto& s : gsteps) {
                        if (s.label != a) continue;
                        bool covered = std::any_of(weak.begin(), weak.end(), [&](const oracle::Conf& w) {
                            return w.first == s.to.state && w.second >= s.to.counter;
                        });
                        CHECK(covered);
                    }
                }
    }
}

TEST_CASE("weak to strong on an identity pair") {
    auto x = fixtures::p_loop();
    auto red = weak_to_strong(x, x);
    auto grid = approximant_finite(red.spoiler, red.duplicator, 8, {12, 12});
    const int p = red.spoiler_map[0], q = red.duplicator_map[0];
    for (int m = 0; m <= 4; ++m) CHECK(grid.member(p, m, q, 0));
}

TEST_CASE("emitted constructions survive a text round trip") {
    ParseOptions opt;
    opt.allow_reserved = true;
    auto n1 = fixtures::family(1);
    auto g = build_guarded_omega(n1, true);
    CHECK(parse_net(format_net(g), opt) == g);
    auto red = weak_to_strong(fixtures::p_loop(), n1);
    CHECK(parse_net(format_net(red.spoiler), opt) == red.spoiler);
    CHECK(parse_net(format_net(red.duplicator), opt) == red.duplicator);
    CHECK_THROWS(parse_net(format_net(red.duplicator)));
}

TEST_CASE("test gadget") {
    for (int mval : {0, 2, OMEGA}) {
        auto g = build_test_gadget(mval, "p", "q");
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 3; ++n) {
                bool sim = brute_force_game(g.s, g.t, {g.s0, m}, {g.t0, n}, 6, 6);
                CHECK(sim == (mval != OMEGA && m >= mval ? false : true));
            }
    }
    auto omega = build_test_gadget(OMEGA, "p", "q");
    CHECK(omega.s.trans.empty());
}

TEST_CASE("step nets") {
    SUBCASE("no omega transitions leaves verdicts unchanged") {
        auto x = fixtures::x_loop();
        Net z(NetKind::ocn, "Z");
        z.add("Z", "a", -1, "Z");
        auto mt = compute_m_table(x, z, 1, 6);
        auto sn = build_step_nets(x, z, mt);
        CHECK(sn.duplicator.find_state("@w/W") >= 0);
        for (const auto& t : z.trans) CHECK(std::find(sn.duplicator.trans.begin(), sn.duplicator.trans.end(), t) !=
                                            sn.duplicator.trans.end());
        for (int alpha = 0; alpha <= 4; ++alpha) {
            auto before = approximant_finite(x, z, alpha, {6, 6});
            auto after = approximant_finite(sn.spoiler, sn.duplicator, alpha, {6, 6});
            for (int m = 0; m <= 2; ++m)
                for (int n = 0; n <= 2; ++n)
                    CHECK(before.member(0, m, 0, n) == after.member(0, m, sn.duplicator.state("Z"), n));
        }
    }
    SUBCASE("jump then stay after an omega replacement") {
        auto x = fixtures::x_loop();
        auto yz = fixtures::yz();
        auto mt = compute_m_table(x, yz, 1, 6);
        auto sn = build_step_nets(x, yz, mt);
        const auto& s = sn.spoiler;
        const auto& d = sn.duplicator;
        const std::string tz = "@gadget/X/Z/t", sxz = "@gadget/X/Z/s0";
        CHECK(has_trans(d, "Y", "a", 0, 0, tz));
        CHECK(has_trans(s, "X", pair_label("X", "Z"), 0, 0, sxz));
        CHECK(has_trans(d, tz, pair_label("X", "Z"), 0, 0, tz));
        CHECK(has_trans(d, tz, pair_label("X", "Y"), 0, 0, "@w/W"));
        CHECK(has_trans(d, "Y", pair_label("X", "Z"), 0, 0, "@w/W"));
    }
}

TEST_CASE("m table") {
    auto x = fixtures::x_loop();
    auto yz = fixtures::yz();
    auto zero = compute_m_table(x, yz, 0, 6);
    for (const auto& row : zero.entries)
        for (int v : row) CHECK(v == OMEGA);

    Net dead(NetKind::ocn, "D");
    dead.add_state("d");
    CHECK(compute_m_table(x, dead, 1, 6).at(0, 0) == 0);

    // Without an omega step Z is refuted for every n, so the least m is 0.
    // Y spends its single omega unit and lands in the full relation.
    auto mt = compute_m_table(x, yz, 1, 6);
    CHECK(mt.at(0, yz.state("Z")) == 0);
    CHECK(mt.at(0, yz.state("Y")) == OMEGA);
}
