#include "ocnwb/finite_compare.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>

namespace ocnwb {

namespace {

void require_fs(const Net& n) {
    if (n.kind != NetKind::fs) throw std::invalid_argument("net '" + n.name + "' is not an fs");
}

void require_ocn(const Net& n) {
    if (n.kind != NetKind::ocn) throw std::invalid_argument("net '" + n.name + "' is not an ocn");
}

using Bits = std::vector<std::uint64_t>;

struct BitSet {
    std::size_t words = 0;
    Bits make() const { return Bits(words, 0); }
    static void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
    static bool get(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
    static void unite(Bits& a, const Bits& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
    }
    static bool meets(const Bits& a, const Bits& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] & b[i]) return true;
        return false;
    }
};

// Weak step relation per label as bit rows; label 0 is tau.
struct Closure {
    std::size_t n = 0;
    BitSet bs;
    std::vector<std::string> labels;
    std::vector<std::vector<Bits>> post;  // [label][state]
};

Closure close(const Net& fs) {
    Closure c;
    c.n = fs.num_states();
    c.bs.words = (c.n + 63) / 64;
    c.labels.push_back(std::string(TAU));
    for (const auto& l : fs.actions())
        if (!is_silent(l)) c.labels.push_back(l);
    std::vector<std::vector<int>> silent(c.n);
    for (const auto& t : fs.trans)
        if (is_silent(t.label)) silent[t.src].push_back(t.dst);
    std::vector<Bits> reach(c.n, c.bs.make());
    for (std::size_t q = 0; q < c.n; ++q) {
        std::vector<int> stack{static_cast<int>(q)};
        BitSet::set(reach[q], q);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : silent[x])
                if (!BitSet::get(reach[q], y)) {
                    BitSet::set(reach[q], y);
                    stack.push_back(y);
                }
        }
    }
    c.post.push_back(reach);
    for (std::size_t l = 1; l < c.labels.size(); ++l) {
        std::vector<Bits> step(c.n, c.bs.make());
        for (const auto& t : fs.trans)
            if (t.label == c.labels[l]) BitSet::set(step[t.src], t.dst);
        std::vector<Bits> rows(c.n, c.bs.make());
        for (std::size_t q = 0; q < c.n; ++q) {
            Bits mid = c.bs.make();
            for (std::size_t x = 0; x < c.n; ++x)
                if (BitSet::get(reach[q], x)) BitSet::unite(mid, step[x]);
            for (std::size_t y = 0; y < c.n; ++y)
                if (BitSet::get(mid, y)) BitSet::unite(rows[q], reach[y]);
        }
        c.post.push_back(std::move(rows));
    }
    return c;
}

}  // namespace

Net weak_closure(const Net& fs) {
    require_fs(fs);
    const Closure c = close(fs);
    Net out(NetKind::fs, fs.name);
    for (const auto& s : fs.states()) out.add_state(s);
    for (std::size_t q = 0; q < c.n; ++q)
        for (std::size_t l = 0; l < c.labels.size(); ++l)
            for (std::size_t j = 0; j < c.n; ++j)
                if (BitSet::get(c.post[l][q], j)) out.add(static_cast<int>(q), c.labels[l], 0, static_cast<int>(j));
    return out;
}

std::string capped_state(const std::string& q, int n) { return q + "@" + std::to_string(n); }

Net capped_net(const Net& ocn, int l) {
    require_ocn(ocn);
    if (l < 1) throw std::invalid_argument("cap must be at least 1");
    Net out(NetKind::fs, ocn.name + "@" + std::to_string(l));
    const int nq = static_cast<int>(ocn.num_states());
    for (int q = 0; q < nq; ++q)
        for (int n = 0; n <= l; ++n) out.add_state(capped_state(ocn.state_name(q), n));
    auto id = [l](int q, int n) { return q * (l + 1) + n; };
    for (int q = 0; q < nq; ++q)
        for (int n = 0; n <= l; ++n) {
            std::vector<std::pair<std::string, int>> seen;
            for (const auto& t : ocn.trans) {
                if (t.src != q || n + t.delta < 0) continue;
                std::pair<std::string, int> e{t.label, id(t.dst, std::min(n + t.delta, l))};
                if (std::find(seen.begin(), seen.end(), e) != seen.end()) continue;
                seen.push_back(e);
                out.add(id(q, n), e.first, 0, e.second);
            }
        }
    return out;
}

bool fs_weak_sim(const Net& fs1, int s, const Net& fs2, int t) {
    require_fs(fs1);
    require_fs(fs2);
    fs1.state_name(s);
    fs2.state_name(t);
    const Closure a = close(fs1), b = close(fs2);
    // Label of a mapped to the matching label index of b, or -1.
    std::vector<int> match(a.labels.size(), -1);
    for (std::size_t l = 0; l < a.labels.size(); ++l)
        for (std::size_t k = 0; k < b.labels.size(); ++k)
            if (a.labels[l] == b.labels[k]) match[l] = static_cast<int>(k);
    // rel[i] is the set of b states still simulating a state i.
    std::vector<Bits> rel(a.n, b.bs.make());
    for (auto& row : rel)
        for (std::size_t j = 0; j < b.n; ++j) BitSet::set(row, j);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < a.n; ++i)
            for (std::size_t j = 0; j < b.n; ++j) {
                if (!BitSet::get(rel[i], j)) continue;
                bool ok = true;
                for (std::size_t l = 0; l < a.labels.size() && ok; ++l)
                    for (std::size_t x = 0; x < a.n && ok; ++x) {
                        if (!BitSet::get(a.post[l][i], x)) continue;
                        ok = match[l] >= 0 && BitSet::meets(b.post[static_cast<std::size_t>(match[l])][j], rel[x]);
                    }
                if (!ok) {
                    rel[i][j / 64] &= ~(std::uint64_t{1} << (j % 64));
                    changed = true;
                }
            }
    }
    return BitSet::get(rel[static_cast<std::size_t>(s)], static_cast<std::size_t>(t));
}

long long sufficient_cap(std::size_t ocn_states, std::size_t fs_states) {
    return (2 * static_cast<long long>(ocn_states) + 1) * (static_cast<long long>(ocn_states * fs_states) + 1);
}

bool ocn_simulates_fs(const Net& ocn, int q, int n, const Net& fs, int p, int cap) {
    require_ocn(ocn);
    require_fs(fs);
    ocn.state_name(q);
    fs.state_name(p);
    if (n < 0) throw std::invalid_argument("negative counter");
    long long c = cap >= 1 ? cap : sufficient_cap(ocn.num_states(), fs.num_states());
    if (c > 1'000'000) throw std::length_error("cap too large");
    const int l = static_cast<int>(c);
    Net capped = capped_net(ocn, l);
    return fs_weak_sim(fs, p, capped, q * (l + 1) + std::min(n, l));
}

std::string ThresholdTable::report() const {
    std::ostringstream o;
    o << "TABLE cutoff=" << cutoff << "\n";
    for (std::size_t p = 0; p < ocn_states.size(); ++p)
        for (std::size_t s = 0; s < fs_states.size(); ++s) {
            int v = t[p][s];
            o << "t " << ocn_states[p] << " " << fs_states[s] << " "
              << (v == TT_INFINITE ? std::string("INFINITE") : v == TT_ABSENT ? std::string("ABSENT") : std::to_string(v))
              << "\n";
        }
    return o.str();
}

// pm is simulated by s iff every enabled move p -a,d-> p' (m+d >= 0) has an
// answer s -a-> s' with m+d <= t(p',s'). Starting from "everything" and
// shrinking gives the largest such table.
ThresholdTable fs_ocn_table(const Net& fs, const Net& ocn) {
    require_fs(fs);
    require_ocn(ocn);
    constexpr int INF = std::numeric_limits<int>::max();
    const Net w = weak_closure(fs);
    const int np = static_cast<int>(ocn.num_states()), ns = static_cast<int>(w.num_states());
    std::vector<std::vector<int>> t(np, std::vector<int>(ns, INF));
    for (bool changed = true; changed;) {
        changed = false;
        for (int p = 0; p < np; ++p)
            for (int s = 0; s < ns; ++s) {
                int v = INF;
                for (const auto& x : ocn.trans) {
                    if (x.src != p) continue;
                    int best = -1;
                    for (const auto& y : w.trans)
                        if (y.src == s && y.label == x.label) best = std::max(best, t[x.dst][y.dst]);
                    int bound = best == INF ? INF : best - x.delta;
                    v = std::min(v, std::max(-x.delta - 1, bound));
                }
                v = std::max(v, -1);
                if (v != t[p][s]) {
                    t[p][s] = v;
                    changed = true;
                }
            }
    }
    ThresholdTable tab;
    tab.ocn_states = ocn.states();
    tab.fs_states = w.states();
    tab.cutoff = np * ns;
    tab.t.assign(np, std::vector<int>(ns, TT_ABSENT));
    for (int p = 0; p < np; ++p)
        for (int s = 0; s < ns; ++s) {
            int v = t[p][s];
            tab.t[p][s] = v == INF || v > tab.cutoff ? TT_INFINITE : v;
        }
    return tab;
}

bool fs_simulates_ocn(const Net& fs, int s, const Net& ocn, int p, int m) {
    fs.state_name(s);
    ocn.state_name(p);
    if (m < 0) throw std::invalid_argument("negative counter");
    return fs_ocn_table(fs, ocn).member(p, m, s);
}

}  // namespace ocnwb
