#include "ocnwb/traces.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "ocnwb/finite_compare.hpp"

namespace ocnwb {

std::string word_str(const Word& w) {
    std::string s;
    for (const auto& a : w) s += (s.empty() ? "" : " ") + a;
    return s;
}

std::optional<long long> wfa_value(const Net& wfa, const Word& w) {
    if (wfa.kind != NetKind::wfa) throw std::invalid_argument("not a wfa");
    if (wfa.init < 0) throw std::invalid_argument("wfa has no initial state");
    std::map<int, long long> cur{{wfa.init, 0}};
    for (const auto& a : w) {
        std::map<int, long long> next;
        for (auto [q, v] : cur)
            for (const auto& t : wfa.trans)
                if (t.src == q && t.label == a) {
                    auto [it, fresh] = next.emplace(t.dst, v + t.delta);
                    if (!fresh) it->second = std::max(it->second, v + t.delta);
                }
        cur = std::move(next);
        if (cur.empty()) return std::nullopt;
    }
    long long best = 0;
    for (auto [q, v] : cur) best = std::max(best, v);
    return best;
}

WfaEncoding wfa_to_ocn(const Net& wfa, const std::string& d_label) {
    if (wfa.kind != NetKind::wfa) throw std::invalid_argument("not a wfa");
    if (wfa.init < 0) throw std::invalid_argument("wfa has no initial state");
    auto labels = wfa.actions();
    std::string d = d_label.empty() ? "d" : d_label;
    if (std::find(labels.begin(), labels.end(), d) != labels.end()) {
        if (!d_label.empty()) throw std::invalid_argument("label '" + d + "' already used by the wfa");
        for (int i = 1; std::find(labels.begin(), labels.end(), d) != labels.end(); ++i) d = "d" + std::to_string(i);
    }
    WfaEncoding e{Net(NetKind::gomega, wfa.name + "_enc"), {wfa.init, 0}, d, 0};
    for (const auto& s : wfa.states()) e.net.add_state(s);
    e.d_state = e.net.add_state(ENCODING_SINK);
    for (const auto& t : wfa.trans) e.net.add(t.src, t.label, t.delta, t.dst);
    for (int q = 0; q < static_cast<int>(wfa.num_states()); ++q) e.net.add(q, d, -1, e.d_state);
    e.net.add(e.d_state, d, -1, e.d_state);
    return e;
}

TraceSet traces_bounded(const Net& net, Configuration c, int max_len) {
    if (net.has_omega()) throw std::invalid_argument("traces_bounded does not handle OMEGA");
    TraceSet ts;
    ts.max_len = max_len;
    std::map<Word, std::set<std::pair<int, int>>> frontier{{{}, {{c.state, c.counter}}}};
    ts.words.insert(Word{});
    for (int len = 0; len < max_len && !frontier.empty(); ++len) {
        std::map<Word, std::set<std::pair<int, int>>> next;
        for (const auto& [w, confs] : frontier)
            for (auto [q, n] : confs)
                for (const auto& s : successors(net, {q, n})) {
                    Word w2 = w;
                    w2.push_back(s.label);
                    next[w2].insert({s.state, s.counter});
                }
        for (const auto& [w, _] : next) ts.words.insert(w);
        frontier = std::move(next);
    }
    return ts;
}

std::string InclusionVerdict::report() const {
    std::ostringstream o;
    switch (kind) {
        case InclusionKind::included: o << "VERDICT included bound=" << bound; break;
        case InclusionKind::counterexample: o << "VERDICT counterexample w=" << word_str(word); break;
        case InclusionKind::budget_exceeded: o << "VERDICT budget_exceeded bound=" << bound; break;
    }
    o << "\n";
    return o.str();
}

long long inclusion_bound(int m, std::size_t oca_states, std::size_t fs_states) {
    if (fs_states >= 62) throw std::length_error("fs too large for the powerset search");
    long double k = static_cast<long double>(oca_states) * static_cast<long double>(1ULL << fs_states);
    long double b = std::max(m, 1) * 5.0L * k * k * k * k;
    if (b > 4e18L) throw std::length_error("inclusion bound overflows");
    return static_cast<long long>(b);
}

namespace {

void require_automaton(const Net& a) {
    if (a.kind != NetKind::ocn && a.kind != NetKind::oca) throw std::invalid_argument("left side must be an ocn or oca");
}

struct PowersetStep {
    const Net& fs;
    std::map<std::string, std::vector<std::uint64_t>> post;  // label -> per-state successor mask

    explicit PowersetStep(const Net& b) : fs(b) {
        for (const auto& t : b.trans) {
            auto& v = post[t.label];
            if (v.empty()) v.assign(b.num_states(), 0);
            v[t.src] |= 1ULL << t.dst;
        }
    }
    std::uint64_t step(std::uint64_t mask, const std::string& a) const {
        auto it = post.find(a);
        if (it == post.end()) return 0;
        std::uint64_t out = 0;
        for (std::size_t s = 0; s < fs.num_states(); ++s)
            if (mask >> s & 1) out |= it->second[s];
        return out;
    }
};

}  // namespace

// Breadth-first over (state, powerset, counter), one layer per path length.
// Counters above m + bound cannot occur on a path of length at most bound, so
// the search is finite.
InclusionVerdict oca_subset_fs(const Net& a, Configuration pm, const Net& b, int q, bool weak, long long max_nodes) {
    require_automaton(a);
    if (b.kind != NetKind::fs) throw std::invalid_argument("right side must be an fs");
    a.state_name(pm.state);
    b.state_name(q);
    const Net rhs = weak ? weak_closure(b) : b;
    PowersetStep ps(rhs);
    InclusionVerdict v;
    v.bound = inclusion_bound(pm.counter, a.num_states(), rhs.num_states());

    // Outgoing moves per state with the powerset successor precomputed per mask on demand.
    struct Edge {
        int dst, delta, index;
        bool zero, silent;
        std::string label;
    };
    std::vector<std::vector<Edge>> out(a.num_states());
    for (std::size_t i = 0; i < a.trans.size(); ++i) {
        const auto& t = a.trans[i];
        out[t.src].push_back({t.dst, t.delta, static_cast<int>(i), false, is_silent(t.label), t.label});
    }
    if (a.kind == NetKind::oca)
        for (std::size_t i = 0; i < a.ztrans.size(); ++i) {
            const auto& t = a.ztrans[i];
            out[t.src].push_back({t.dst, t.delta, static_cast<int>(i), true, is_silent(t.label), t.label});
        }

    struct Node {
        int state;
        int edge;  // index into out[parent state], -1 at the root
        std::uint64_t mask;
        long long counter;
        long long parent;
    };
    std::vector<Node> nodes;
    const long long top = pm.counter + v.bound;
    const std::size_t masks = std::size_t{1} << rhs.num_states();
    const long double dense_size = static_cast<long double>(a.num_states()) * masks * (top + 1);
    std::vector<bool> dense;
    std::unordered_map<long long, std::unordered_map<std::uint64_t, char>> sparse;  // counter*|Q|+state -> masks
    if (dense_size <= (1LL << 30)) dense.assign(static_cast<std::size_t>(dense_size), false);
    auto fresh = [&](int state, std::uint64_t mask, long long counter) {
        if (!dense.empty()) {
            std::size_t k = (static_cast<std::size_t>(counter) * a.num_states() + state) * masks + mask;
            if (dense[k]) return false;
            dense[k] = true;
            return true;
        }
        return sparse[counter * static_cast<long long>(a.num_states()) + state].emplace(mask, 1).second;
    };
    auto word_of = [&](long long i) {
        Word w;
        for (; nodes[i].parent >= 0; i = nodes[i].parent) {
            const auto& e = out[nodes[nodes[i].parent].state][nodes[i].edge];
            if (!(weak && e.silent)) w.push_back(e.label);
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    std::uint64_t start = 1ULL << q;
    if (weak) start = ps.step(start, std::string(TAU));
    fresh(pm.state, start, pm.counter);
    nodes.push_back({pm.state, -1, start, pm.counter, -1});
    std::size_t layer_begin = 0;
    for (long long len = 0; len < v.bound && layer_begin < nodes.size(); ++len) {
        const std::size_t layer_end = nodes.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            const Node cur = nodes[i];
            const auto& edges = out[cur.state];
            for (std::size_t e = 0; e < edges.size(); ++e) {
                const auto& ed = edges[e];
                long long c2;
                if (ed.zero) {
                    if (cur.counter != 0) continue;
                    c2 = ed.delta;
                } else {
                    c2 = cur.counter + ed.delta;
                    if (c2 < 0) continue;
                }
                if (c2 > top) continue;
                std::uint64_t mask = (weak && ed.silent) ? cur.mask : ps.step(cur.mask, ed.label);
                if (!fresh(ed.dst, mask, c2)) continue;
                nodes.push_back({ed.dst, static_cast<int>(e), mask, c2, static_cast<long long>(i)});
                if (mask == 0) {
                    v.kind = InclusionKind::counterexample;
                    v.word = word_of(static_cast<long long>(nodes.size()) - 1);
                    v.explored = static_cast<long long>(nodes.size());
                    return v;
                }
                if (max_nodes > 0 && static_cast<long long>(nodes.size()) >= max_nodes) {
                    v.kind = InclusionKind::budget_exceeded;
                    v.explored = static_cast<long long>(nodes.size());
                    return v;
                }
            }
        }
        layer_begin = layer_end;
    }
    v.kind = InclusionKind::included;
    v.explored = static_cast<long long>(nodes.size());
    return v;
}

bool separates(const Net& a, Configuration pm, const Net& b, int q, const Word& w, bool weak) {
    // Left side: set of configurations reached by w, tau steps free when weak.
    std::set<std::pair<int, int>> cur{{pm.state, pm.counter}};
    auto silent_close = [&](std::set<std::pair<int, int>> s) {
        // Silent exploration is cut at a heuristic counter limit, so a false
        // result on the left side is not conclusive for weak replays.
        std::set<std::pair<int, int>> all = s;
        std::vector<std::pair<int, int>> work(s.begin(), s.end());
        const int limit = pm.counter + static_cast<int>(w.size() + a.num_states()) * 4 + 4;
        while (!work.empty()) {
            auto [x, n] = work.back();
            work.pop_back();
            for (const auto& st : successors(a, {x, n}))
                if (is_silent(st.label) && st.counter <= limit && all.insert({st.state, st.counter}).second)
                    work.push_back({st.state, st.counter});
        }
        return all;
    };
    if (weak) cur = silent_close(cur);
    for (const auto& l : w) {
        std::set<std::pair<int, int>> next;
        for (auto [x, n] : cur)
            for (const auto& st : successors(a, {x, n}))
                if (st.label == l) next.insert({st.state, st.counter});
        cur = weak ? silent_close(next) : next;
        if (cur.empty()) return false;
    }
    const Net rhs = weak ? weak_closure(b) : b;
    PowersetStep ps(rhs);
    std::uint64_t mask = 1ULL << q;
    if (weak) mask = ps.step(mask, std::string(TAU));
    for (const auto& l : w) mask = ps.step(mask, l);
    return mask == 0;
}

long long reach_bound(int m, std::size_t states) {
    long double q = static_cast<long double>(states);
    return static_cast<long long>(std::max(m, 1) * 5.0L * q * q * q * q);
}

long long shortest_reach(const Net& a, Configuration pm, int target) {
    require_automaton(a);
    a.state_name(pm.state);
    a.state_name(target);
    if (pm.state == target) return 0;
    const long long top = pm.counter + reach_bound(pm.counter, a.num_states());
    std::map<std::pair<int, int>, long long> dist{{{pm.state, pm.counter}, 0}};
    std::deque<std::pair<int, int>> work{{pm.state, pm.counter}};
    while (!work.empty()) {
        auto c = work.front();
        work.pop_front();
        const long long d = dist[c];
        for (const auto& s : successors(a, {c.first, c.second})) {
            if (s.counter > top) continue;
            std::pair<int, int> n{s.state, s.counter};
            if (!dist.emplace(n, d + 1).second) continue;
            if (s.state == target) return d + 1;
            work.push_back(n);
        }
    }
    return UNREACHABLE;
}

}  // namespace ocnwb
