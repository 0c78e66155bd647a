#include <algorithm>
#include <functional>

#include "doctest.h"
#include "ocnwb/traces.hpp"
#include "support/nets.hpp"
#include "support/oracles.hpp"

using namespace ocnwb;

namespace {

Word W(std::initializer_list<const char*> xs) { return Word(xs.begin(), xs.end()); }

Net single_wfa(int reward) {
    Net n(NetKind::wfa, "A");
    n.add("q", "a", reward, "q");
    n.init = 0;
    return n;
}

std::vector<Word> words_upto(const std::vector<std::string>& alphabet, int len) {
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i)
        if (static_cast<int>(out[i].size()) < len)
            for (const auto& a : alphabet) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(w);
            }
    return out;
}

}  // namespace

TEST_CASE("wfa values") {
    auto a = single_wfa(3);
    CHECK(wfa_value(a, {}) == 0);
    CHECK(wfa_value(a, W({"a", "a"})) == 6);
    CHECK_FALSE(wfa_value(a, W({"b"})).has_value());

    Net br(NetKind::wfa, "B");
    br.add("s", "a", 1, "x");
    br.add("s", "a", 0, "y");
    br.add("x", "b", 1, "z");
    br.add("y", "b", 5, "z");
    br.init = 0;
    CHECK(wfa_value(br, W({"a", "b"})) == 5);
    CHECK(oracle::wfa_best_run(br, W({"a", "b"})) == 5);
}

TEST_CASE("wfa values match run enumeration") {
    auto r = gen::rng(51);
    for (int round = 0; round < 100; ++round) {
        auto a = gen::wfa(r, 3, 6, 3);
        for (const auto& w : words_upto({"a", "b"}, 4)) {
            auto v = wfa_value(a, w);
            CHECK(v.value_or(-1) == oracle::wfa_best_run(a, w));
        }
    }
}

TEST_CASE("wfa encoding") {
    Net empty(NetKind::wfa, "E");
    empty.add_state("q0");
    empty.init = 0;
    auto e = wfa_to_ocn(empty);
    CHECK(traces_bounded(e.net, e.start, 4).words == std::set<Word>{Word{}});
    CHECK(e.net.state_name(e.d_state) == ENCODING_SINK);

    auto two = wfa_to_ocn(single_wfa(2));
    CHECK(two.d_label == "d");
    auto ts = traces_bounded(two.net, two.start, 8);
    CHECK(ts.contains(W({"a", "a", "d", "d", "d", "d"})));
    CHECK_FALSE(ts.contains(W({"a", "d", "d", "d"})));
    CHECK(ts.contains(W({"a", "d", "d"})));

    Net clash(NetKind::wfa, "C");
    clash.add("q", "d", 1, "q");
    clash.init = 0;
    CHECK(wfa_to_ocn(clash).d_label == "d1");
    CHECK_THROWS(wfa_to_ocn(clash, "d"));
}

TEST_CASE("encoding transports a separating pair") {
    auto a = wfa_to_ocn(single_wfa(3));
    auto b = wfa_to_ocn(single_wfa(1));
    const Word w = W({"a", "d", "d"});
    CHECK(traces_bounded(a.net, a.start, 3).contains(w));
    CHECK_FALSE(traces_bounded(b.net, b.start, 3).contains(w));
}

TEST_CASE("bounded traces") {
    Net dead(NetKind::ocn, "D");
    dead.add_state("d");
    CHECK(traces_bounded(dead, {0, 0}, 3).words == std::set<Word>{Word{}});

    auto loop = fixtures::x_loop();
    CHECK(traces_bounded(loop, {0, 0}, 3).words == std::set<Word>{Word{}, W({"a"}), W({"a", "a"}), W({"a", "a", "a"})});

    auto n1 = fixtures::family(1);
    auto ts = traces_bounded(n1, {0, 0}, 3);
    CHECK(ts.contains(W({"tau", "tau", "a"})));
    CHECK(ts.contains(W({"tau", "a"})));
}

TEST_CASE("bounded traces agree with path enumeration") {
    auto r = gen::rng(52);
    for (int round = 0; round < 100; ++round) {
        auto a = gen::oca(r, 3, 5);
        const Configuration c{0, gen::uniform(r, 0, 2)};
        auto ts = traces_bounded(a, c, 6);
        CHECK(ts.words == oracle::traces(a, c, 6));
        for (const auto& w : ts.words)
            if (!w.empty()) CHECK(ts.contains(Word(w.begin(), w.end() - 1)));
    }
}

TEST_CASE("oca trace inclusion") {
    Net dead(NetKind::oca, "D");
    dead.add_state("d");
    auto inc = oca_subset_fs(dead, {0, 0}, fixtures::fs_chain(3), 0, false);
    CHECK(inc.kind == InclusionKind::included);

    auto ce = oca_subset_fs(fixtures::x_loop(), {0, 0}, fixtures::fs_chain(3), 0, false);
    REQUIRE(ce.kind == InclusionKind::counterexample);
    CHECK(ce.word == W({"a", "a", "a", "a"}));
    CHECK(ce.report() == "VERDICT counterexample w=a a a a\n");

    auto same = oca_subset_fs(fixtures::x_loop(), {0, 0}, fixtures::fs_loop(), 0, false);
    CHECK(same.kind == InclusionKind::included);
    CHECK(same.bound == inclusion_bound(0, 1, 1));
    CHECK(inclusion_bound(0, 1, 1) == 80);
    CHECK(same.report() == "VERDICT included bound=80\n");

    Net z(NetKind::oca, "Z");
    z.add_state("p");
    z.add_state("r");
    z.add("p", "a", -1, "p");
    z.add_zero("p", "b", 0, "r");
    auto zt = oca_subset_fs(z, {0, 1}, fixtures::fs_loop(), 0, false);
    REQUIRE(zt.kind == InclusionKind::counterexample);
    CHECK(zt.word == W({"a", "b"}));
    CHECK(separates(z, {0, 1}, fixtures::fs_loop(), 0, zt.word, false));

    Net up(NetKind::ocn, "U");
    up.add("u", "a", 1, "u");
    auto tiny = oca_subset_fs(up, {0, 0}, fixtures::fs_loop(), 0, false, 3);
    CHECK(tiny.kind == InclusionKind::budget_exceeded);
}

TEST_CASE("weak inclusion hides silent steps") {
    Net a(NetKind::ocn, "A");
    a.add("p", "tau", 1, "p");
    a.add("p", "a", -1, "p");
    auto strong = oca_subset_fs(a, {0, 0}, fixtures::fs_loop(), 0, false);
    CHECK(strong.kind == InclusionKind::counterexample);
    CHECK(oca_subset_fs(a, {0, 0}, fixtures::fs_loop(), 0, true).kind == InclusionKind::included);
}

TEST_CASE("inclusion agrees with bounded trace difference") {
    auto r = gen::rng(53);
    for (int round = 0; round < 60; ++round) {
        auto a = gen::oca(r, 3, 5);
        auto b = gen::fs(r, 2, 4, false, "B");
        const Configuration pm{0, gen::uniform(r, 0, 2)};
        auto v = oca_subset_fs(a, pm, b, 0, false);
        REQUIRE(v.kind != InclusionKind::budget_exceeded);
        auto ta = traces_bounded(a, pm, 8), tb = traces_bounded(b, {0, 0}, 8);
        std::vector<Word> diff;
        std::set_difference(ta.words.begin(), ta.words.end(), tb.words.begin(), tb.words.end(),
                            std::back_inserter(diff));
        if (v.kind == InclusionKind::included) {
            CHECK(diff.empty());
        } else {
            CHECK(separates(a, pm, b, 0, v.word, false));
            if (!diff.empty()) {
                auto shortest = std::min_element(diff.begin(), diff.end(), [](const Word& x, const Word& y) {
                    return x.size() < y.size();
                });
                CHECK(v.word.size() == shortest->size());
            } else {
                CHECK(v.word.size() > 8);
            }
        }
        auto weak = oca_subset_fs(a, pm, b, 0, true);
        if (v.kind == InclusionKind::included) CHECK(weak.kind == InclusionKind::included);
    }
}

TEST_CASE("shortest reach") {
    Net n(NetKind::oca, "A");
    n.add("p", "a", 1, "r");
    n.add("r", "b", -1, "q");
    CHECK(shortest_reach(n, {0, 0}, 0) == 0);
    CHECK(shortest_reach(n, {0, 0}, n.state("q")) == 2);
    CHECK(shortest_reach(n, {n.state("q"), 0}, 0) == UNREACHABLE);

    auto r = gen::rng(54);
    for (int round = 0; round < 100; ++round) {
        auto a = gen::oca(r, 3, 6);
        const int m = gen::uniform(r, 0, 3);
        for (int t = 0; t < static_cast<int>(a.num_states()); ++t) {
            auto k = shortest_reach(a, {0, m}, t);
            if (k == UNREACHABLE) continue;
            CHECK(k <= reach_bound(m, a.num_states()));
            // Every shorter length is a miss: no prefix reaches the target earlier.
            std::set<oracle::Conf> layer{{0, m}};
            bool seen = (t == 0);
            for (long long i = 0; i < k; ++i) {
                CHECK_FALSE(seen);
                std::set<oracle::Conf> next;
                for (auto [q, c] : layer)
                    for (const auto& s : successors(a, {q, c})) {
                        next.insert({s.state, s.counter});
                        if (s.state == t) seen = true;
                    }
                layer = std::move(next);
            }
            CHECK(seen);
        }
    }
}

namespace {

bool is_trace(const Net& n, Configuration c, const Word& w) {
    std::set<oracle::Conf> cur{{c.state, c.counter}};
    for (const auto& a : w) {
        std::set<oracle::Conf> next;
        for (auto [q, m] : cur)
            for (const auto& s : successors(n, {q, m}))
                if (s.label == a) next.insert({s.state, s.counter});
        cur = std::move(next);
    }
    return !cur.empty();
}

}  // namespace

TEST_CASE("encoding faithfulness on bounded words") {
    auto r = gen::rng(55);
    for (int round = 0; round < 80; ++round) {
        auto a = gen::wfa(r, 3, 5, 3, "A");
        auto b = gen::wfa(r, 3, 5, 3, "B");
        auto ea = wfa_to_ocn(a, "d"), eb = wfa_to_ocn(b, "d");
        bool dominated = true;
        long long max_value = 0;
        const auto words = words_upto({"a", "b"}, 4);
        for (const auto& w : words) {
            long long va = wfa_value(a, w).value_or(-1), vb = wfa_value(b, w).value_or(-1);
            if (va > vb) dominated = false;
            max_value = std::max(max_value, va);
        }
        bool separated = false;
        for (const auto& w : words)
            for (long long j = 0; j <= max_value && !separated; ++j) {
                Word wd = w;
                wd.insert(wd.end(), static_cast<std::size_t>(j), "d");
                separated = is_trace(ea.net, ea.start, wd) && !is_trace(eb.net, eb.start, wd);
            }
        CHECK(dominated == !separated);
    }
}
