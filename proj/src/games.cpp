#include "ocnwb/games.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "ocnwb/reduction.hpp"
#include "threshold_system.hpp"

namespace ocnwb {

using detail::Arena;
using detail::INF;
using detail::OrdinalRun;
using detail::SpoilerSpace;
using detail::SystemBuilder;
using detail::ThresholdSystem;

std::string Ordinal2::str() const {
    if (infinite) return "inf";
    return "w*" + std::to_string(a) + "+" + std::to_string(b);
}

Ordinal2 Ordinal2::parse(const std::string& s) {
    if (s == "inf") return inf();
    try {
        if (s.rfind("w*", 0) == 0) {
            auto plus = s.find('+');
            if (plus == std::string::npos) return make(std::stoi(s.substr(2)), 0);
            return make(std::stoi(s.substr(2, plus - 2)), std::stoi(s.substr(plus + 1)));
        }
        std::size_t used = 0;
        int b = std::stoi(s, &used);
        if (used == s.size() && b >= 0) return finite(b);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("bad ordinal '" + s + "'");
}

void ThresholdGrid::resize(const Net& s, const Net& d, int mmax, int nmax) {
    spoiler_states = s.states();
    dup_states = d.states();
    m_max = mmax;
    n_max = nmax;
    min_n.assign(spoiler_states.size() * static_cast<std::size_t>(mmax + 1) * dup_states.size(), ABSENT);
}

int& ThresholdGrid::at(int p, int m, int q) {
    return min_n.at((static_cast<std::size_t>(p) * (m_max + 1) + m) * dup_states.size() + q);
}

int ThresholdGrid::at(int p, int m, int q) const {
    return min_n.at((static_cast<std::size_t>(p) * (m_max + 1) + m) * dup_states.size() + q);
}

std::string ThresholdGrid::report() const {
    std::ostringstream o;
    o << "GRID α=" << alpha << " β=" << beta << "\n";
    for (std::size_t p = 0; p < spoiler_states.size(); ++p)
        for (int m = 0; m <= m_max; ++m)
            for (std::size_t q = 0; q < dup_states.size(); ++q) {
                int t = at(static_cast<int>(p), m, static_cast<int>(q));
                o << "minN " << spoiler_states[p] << " " << m << " " << dup_states[q] << " "
                  << (t == ABSENT ? std::string("ABSENT") : std::to_string(t)) << "\n";
            }
    return o.str();
}

std::string verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::simulates: return "SIMULATES";
        case VerdictKind::not_simulates: return "NOT_SIMULATES";
        case VerdictKind::unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

std::string WitnessPlay::report() const {
    std::ostringstream o;
    o << "PLAY\n";
    for (const auto& s : steps)
        o << (s.spoiler ? "S: " : "D: ") << s.from << " " << s.from_counter << " -" << s.label << "-> " << s.to
          << " " << s.to_counter << "\n";
    o << "END " << terminal << "\n";
    return o.str();
}

std::string Verdict::report() const {
    std::ostringstream o;
    o << "VERDICT " << verdict_name(kind) << "\n";
    if (rank) o << "rank=" << rank->str() << "\n";
    for (const auto& [k, v] : info) o << k << "=" << v << "\n";
    if (witness) o << witness->report();
    return o.str();
}

std::string SaturationReport::str() const {
    return std::string("rows_equal=") + (rows_equal ? "yes" : "no") + " cols_equal=" + (cols_equal ? "yes" : "no");
}

namespace {

void check_bounds(int alpha, Bounds b) {
    if (alpha < 0) throw std::invalid_argument("alpha must be non-negative");
    if (b.m_max < alpha || b.n_max < alpha) throw std::invalid_argument("bounds smaller than alpha");
}

// Grid over counters 0..m_max read off a rows-space system with one layer.
ThresholdGrid grid_from(const Arena& a, const SpoilerSpace& sp, const SystemBuilder& b, const std::vector<int>& x,
                        int layer, Bounds bd) {
    ThresholdGrid g;
    const int mmax = a.spoiler_is_fs() ? 0 : bd.m_max;
    g.resize(a.spoiler(), a.duplicator(), mmax, bd.n_max);
    for (int p = 0; p < static_cast<int>(a.spoiler().num_states()); ++p)
        for (int m = 0; m <= mmax; ++m)
            for (int q = 0; q < static_cast<int>(a.duplicator().num_states()); ++q) {
                int c = b.component(layer, sp.id(p, m), q);
                int t = c < 0 ? 0 : x[c];
                g.at(p, m, q) = (t == INF || t > bd.n_max) ? ABSENT : t;
            }
    return g;
}

std::vector<int> iterate(const ThresholdSystem& sys, int rounds) {
    std::vector<int> x(sys.size(), 0);
    for (int i = 0; i < rounds; ++i) x = sys.step(x);
    return x;
}

}  // namespace

// In an alpha-round game a Duplicator counter of alpha is as good as any larger
// one, so every finite threshold is at most alpha and the exact arithmetic never
// needs a cap. Spoiler rows above m_max only feed rows they can reach upward,
// so clamping at m_max+alpha leaves rows 0..m_max exact.
ThresholdGrid approximant_finite(const Net& s, const Net& d, int alpha, Bounds b) {
    check_bounds(alpha, b);
    Arena a(s, d);
    auto sp = SpoilerSpace::rows(a, b.m_max + alpha);
    SystemBuilder builder(a, sp, 0);
    builder.add_all();
    auto sys = builder.build();
    auto g = grid_from(a, sp, builder, iterate(sys, alpha), 0, b);
    g.alpha = std::to_string(alpha);
    return g;
}

ThresholdGrid approximant_two_dim(const Net& s, const Net& d, int alpha, int beta, Bounds b) {
    check_bounds(alpha, b);
    if (beta < 0) throw std::invalid_argument("beta must be non-negative");
    Arena a(s, d);
    auto sp = SpoilerSpace::rows(a, b.m_max + alpha);
    ThresholdGrid g;
    if (beta == 0) {
        g.resize(s, d, a.spoiler_is_fs() ? 0 : b.m_max, b.n_max);
        std::fill(g.min_n.begin(), g.min_n.end(), 0);
    } else {
        SystemBuilder builder(a, sp, beta);
        builder.add_all();
        auto sys = builder.build();
        g = grid_from(a, sp, builder, iterate(sys, alpha), beta, b);
    }
    g.alpha = std::to_string(alpha);
    g.beta = std::to_string(beta);
    return g;
}

Ordinal2 rank_solver(const Net& s, const Net& d, Configuration sp, Configuration dp, int beta_budget,
                     int spoiler_bound) {
    if (beta_budget == 0) return Ordinal2::inf();
    Arena a(s, d);
    auto space = SpoilerSpace::reachable(a, sp, spoiler_bound);
    const int layers = beta_budget == BETA_INFINITE ? 0 : beta_budget;
    SystemBuilder builder(a, space, layers);
    int root = builder.add_root(layers, 0, dp.state);
    auto sys = builder.build();
    OrdinalRun run(sys);
    auto r = run.rank(root, dp.counter);
    return r.infinite ? Ordinal2::inf() : Ordinal2::make(r.a, r.b);
}

namespace {

ThresholdGrid gfp_grid(const Arena& a, int cap, bool absorbing) {
    auto sp = SpoilerSpace::classes(a, cap, absorbing);
    SystemBuilder builder(a, sp, 0, cap, absorbing);
    builder.add_all();
    auto sys = builder.build();
    auto g = grid_from(a, sp, builder, sys.gfp(), 0, {cap, cap});
    g.alpha = "gfp";
    return g;
}

// Rows 0..top and a final row standing for every larger counter with slope 1.
// Duplicator values above 3*top count as unreachable.
ThresholdGrid shifted_grid(const Arena& a, int top) {
    auto sp = SpoilerSpace::shifted(a, top);
    SystemBuilder builder(a, sp, 0, 3 * top, false);
    builder.add_all();
    auto sys = builder.build();
    auto g = grid_from(a, sp, builder, sys.gfp(), 0, {top + 1, 3 * top});
    g.alpha = "gfp";
    return g;
}

SaturationReport saturation(const ThresholdGrid& g, int cap) {
    SaturationReport r;
    r.rows_equal = true;
    r.cols_equal = true;
    for (int p = 0; p < static_cast<int>(g.spoiler_states.size()); ++p)
        for (int q = 0; q < static_cast<int>(g.dup_states.size()); ++q) {
            if (g.m_max >= 1 && g.at(p, g.m_max, q) != g.at(p, g.m_max - 1, q)) r.rows_equal = false;
            for (int m = 0; m <= g.m_max; ++m)
                if (g.at(p, m, q) == cap) r.cols_equal = false;
        }
    return r;
}

}  // namespace

std::pair<ThresholdGrid, SaturationReport> capped_gfp(const Net& s, const Net& d, int cap) {
    if (cap < 2) throw std::invalid_argument("cap must be at least 2");
    Arena a(s, d);
    auto g = gfp_grid(a, cap, true);
    return {g, saturation(g, cap)};
}

namespace {

// The relation n >= f(p,m,q) over all naturals m. Rows 0..last come from the
// grid. Beyond the last row a cell continues with slope 0 or 1: forced, or
// (slope < 0) taken as 1 when its last two rows differ by exactly one. Every
// closure condition beyond the checked window is an affine inequality whose
// truth no longer changes, so checking rows 0..window decides closure for all m.
class TailRelation {
public:
    // Rows above `last` (default: the top grid row) are extrapolated.
    TailRelation(const Net& s, const Net& d, const ThresholdGrid& g, int slope, int last = -1) : s_(s), d_(d) {
        fs_ = s.kind == NetKind::fs;
        nq_ = static_cast<int>(d.num_states());
        last_ = last >= 0 ? std::min(last, g.m_max) : g.m_max;
        int maxf = 0;
        for (int t : g.min_n) maxf = std::max(maxf, t);
        window_ = fs_ ? 0 : last_ + 2 * (last_ + maxf) + 8;
        const std::size_t cells = s.num_states() * static_cast<std::size_t>(nq_);
        base_.assign(cells, ABSENT);
        slope_.assign(cells, 0);
        rows_.assign(cells * (window_ + 1), ABSENT);
        for (int p = 0; p < static_cast<int>(s.num_states()); ++p)
            for (int q = 0; q < nq_; ++q) {
                const std::size_t c = cell(p, q);
                base_[c] = g.at(p, last_, q);
                if (!fs_ && slope >= 0) slope_[c] = static_cast<char>(slope);
                else if (!fs_ && last_ >= 1) {
                    int prev = g.at(p, last_ - 1, q);
                    slope_[c] = base_[c] != ABSENT && prev != ABSENT && base_[c] - prev == 1;
                }
                for (int m = 0; m <= window_; ++m) rows_[c * (window_ + 1) + m] = m <= last_ ? g.at(p, m, q) : tail(c, m);
            }
        std::map<std::string, int> ids;
        for (const auto& t : d.trans) ids.emplace(t.label, static_cast<int>(ids.size()));
        s_out_.resize(s.num_states());
        for (const auto& t : s.trans) {
            auto it = ids.find(t.label);
            s_out_[t.src].push_back({&t, it == ids.end() ? -1 : it->second});
        }
        d_out_.assign(d.num_states(), std::vector<std::vector<const Transition*>>(ids.size()));
        for (const auto& t : d.trans) d_out_[t.src][ids[t.label]].push_back(&t);
    }

    int f(int p, int m, int q) const {
        const std::size_t c = cell(p, q);
        if (fs_) m = 0;
        return m <= window_ ? rows_[c * (window_ + 1) + m] : tail(c, m);
    }

    // One sweep over the window. With `prune`, failing cells leave the relation
    // (a whole tail at once) and the result says whether anything changed;
    // without it the first failure is described in `why`.
    bool sweep(bool prune, std::string* why) {
        bool changed = false;
        for (int p = 0; p < static_cast<int>(s_.num_states()); ++p)
            for (int q = 0; q < nq_; ++q)
                for (int m = 0; m <= window_; ++m) {
                    const int t = f(p, m, q);
                    if (t == ABSENT) continue;
                    const Transition* bad = unanswered(p, m, q, t);
                    if (!bad) continue;
                    if (!prune) {
                        if (why) {
                            std::ostringstream o;
                            o << "no answer for " << s_.state_name(p) << " " << m << " -" << bad->label << "-> "
                              << s_.state_name(bad->dst) << " " << (fs_ ? 0 : m + bad->delta) << " against "
                              << d_.state_name(q) << " " << t;
                            *why = o.str();
                        }
                        return true;
                    }
                    remove(p, m, q);
                    changed = true;
                }
        return changed;
    }

private:
    const Net& s_;
    const Net& d_;
    bool fs_ = false;
    int nq_ = 0, last_ = 0, window_ = 0;
    std::vector<int> base_;
    std::vector<char> slope_;
    std::vector<int> rows_;
    std::vector<std::vector<std::pair<const Transition*, int>>> s_out_;
    std::vector<std::vector<std::vector<const Transition*>>> d_out_;

    std::size_t cell(int p, int q) const { return static_cast<std::size_t>(p) * nq_ + q; }
    int tail(std::size_t c, int m) const {
        if (base_[c] == ABSENT) return ABSENT;
        return base_[c] + (slope_[c] ? m - last_ : 0);
    }
    void remove(int p, int m, int q) {
        const std::size_t c = cell(p, q);
        if (m <= last_) {
            rows_[c * (window_ + 1) + m] = ABSENT;
            return;
        }
        base_[c] = ABSENT;
        for (int r = last_ + 1; r <= window_; ++r) rows_[c * (window_ + 1) + r] = ABSENT;
    }

    const Transition* unanswered(int p, int m, int q, int n) const {
        for (const auto& [st, label] : s_out_[p]) {
            const int m2 = fs_ ? 0 : m + st->delta;
            if (m2 < 0) continue;
            bool answered = false;
            if (label >= 0)
                for (const Transition* dt : d_out_[q][label]) {
                    const int need = f(st->dst, m2, dt->dst);
                    if (need == ABSENT) continue;
                    if (dt->delta == OMEGA || d_.kind == NetKind::fs || (n + dt->delta >= 0 && n + dt->delta >= need)) {
                        answered = true;
                        break;
                    }
                }
            if (!answered) return st;
        }
        return nullptr;
    }
};

bool grid_matches(const Net& s, const Net& d, const ThresholdGrid& grid, int cap) {
    const int mtop = s.kind == NetKind::fs ? 0 : cap;
    return cap >= 2 && grid.m_max == mtop && grid.n_max == cap && grid.spoiler_states == s.states() &&
           grid.dup_states == d.states();
}

}  // namespace

Certificate certify_simulation(const Net& s, const Net& d, const ThresholdGrid& grid, int cap) {
    if (!grid_matches(s, d, grid, cap)) return {false, "grid shape does not match the nets and cap"};
    std::string why;
    if (!TailRelation(s, d, grid, -1).sweep(false, &why)) return {true, "closed"};
    // The top row is where clamping at the cap distorts thresholds; retry extrapolating from the row below.
    if (s.kind != NetKind::fs && grid.m_max >= 2 && !TailRelation(s, d, grid, -1, grid.m_max - 1).sweep(false, nullptr))
        return {true, "closed below cap"};
    return {false, why};
}

namespace {

void add_info(Verdict& v, const std::string& k, const std::string& val) { v.info.emplace_back(k, val); }

// Least level at which the root drops out, up to alpha_max, or -1.
int first_refutation(const Net& s, const Net& d, Configuration sp, Configuration dp, int alpha_max) {
    if (alpha_max <= 0) return -1;
    Arena a(s, d);
    auto space = SpoilerSpace::rows(a, sp.counter + alpha_max);
    SystemBuilder builder(a, space, 0);
    int root = builder.add_root(0, space.id(sp.state, sp.counter), dp.state);
    auto sys = builder.build();
    std::vector<int> x(sys.size(), 0);
    for (int level = 1; level <= alpha_max; ++level) {
        auto y = sys.step(x);
        if (y[root] > dp.counter) return level;
        if (y == x) return -1;
        x = std::move(y);
    }
    return -1;
}

Verdict decide(const Net& s, Configuration sp, const Net& d, Configuration dp, Budgets b) {
    Verdict v;
    if (sp.state < 0 || sp.state >= static_cast<int>(s.num_states()) || dp.state < 0 ||
        dp.state >= static_cast<int>(d.num_states()))
        throw std::out_of_range("configuration state out of range");

    int level = first_refutation(s, d, sp, dp, b.alpha_max);
    if (level > 0) {
        v.kind = VerdictKind::not_simulates;
        v.rank = Ordinal2::finite(level);
        add_info(v, "method", "approximant");
        add_info(v, "refuted_at", std::to_string(level));
        v.witness = extract_witness(s, d, sp, dp, level);
        return v;
    }

    if (b.alpha_max > 0) {
        try {
            Arena a(s, d);
            auto space = SpoilerSpace::reachable(a, sp, b.cap);
            SystemBuilder builder(a, space, 0);
            int root = builder.add_root(0, 0, dp.state);
            auto sys = builder.build();
            OrdinalRun run(sys);
            auto r = run.rank(root, dp.counter);
            if (!r.infinite) {
                v.kind = VerdictKind::not_simulates;
                v.rank = Ordinal2::make(r.a, r.b);
                add_info(v, "method", "rank");
                return v;
            }
            const auto& fix = run.final_thresholds();
            if (sys.step(fix) == fix && fix[root] <= dp.counter) {
                v.kind = VerdictKind::simulates;
                v.rank = Ordinal2::inf();
                add_info(v, "method", "rank");
                add_info(v, "certificate", "fixpoint over " + std::to_string(space.configs.size()) +
                                               " spoiler configurations");
                return v;
            }
        } catch (const RankInapplicable&) {
            add_info(v, "rank", "inapplicable");
        }
    }

    if (b.cap >= 2) {
        Arena a(s, d);
        struct Candidate {
            std::string mode;
            ThresholdGrid grid;
            int slope;
        };
        std::vector<Candidate> candidates;
        if (s.kind != NetKind::fs) candidates.push_back({"shifted", shifted_grid(a, b.cap), 1});
        candidates.push_back({"optimistic", gfp_grid(a, b.cap, true), -1});
        candidates.push_back({"conservative", gfp_grid(a, b.cap, false), -1});
        for (const auto& c : candidates) {
            TailRelation rel(s, d, c.grid, c.slope);
            std::string why, cert = "closed";
            if (rel.sweep(false, &why)) {
                // The largest closed part of the grid still proves every pair it contains.
                while (rel.sweep(true, nullptr)) {
                }
                cert = "closed subset";
            }
            const int t = rel.f(sp.state, sp.counter, dp.state);
            if (t != ABSENT && dp.counter >= t) {
                v.kind = VerdictKind::simulates;
                add_info(v, "method", "capped_gfp_" + c.mode);
                add_info(v, "certificate", cert);
                return v;
            }
            add_info(v, "gfp_" + c.mode, why.empty() ? "root not in relation" : "rejected: " + why);
        }
    }

    v.kind = VerdictKind::unknown;
    add_info(v, "alpha_max", std::to_string(b.alpha_max));
    add_info(v, "cap", std::to_string(b.cap));
    return v;
}

}  // namespace

Verdict strong_sim_check(const Net& s, Configuration sp, const Net& d, Configuration dp, Budgets b) {
    return decide(s, sp, d, dp, b);
}

Verdict weak_sim_check(const Net& m, Configuration pm, const Net& n, Configuration qn, Budgets b) {
    if (m.kind != NetKind::ocn || n.kind != NetKind::ocn) throw std::invalid_argument("weak simulation needs two ocns");
    m.state_name(pm.state);
    n.state_name(qn.state);
    auto r = weak_to_strong(m, n);
    Configuration sp{r.spoiler_map[pm.state], pm.counter};
    Configuration dp{r.duplicator_map[qn.state], qn.counter};
    auto v = decide(r.spoiler, sp, r.duplicator, dp, b);
    // Ranks and witnesses refer to the reduced nets, k rounds per original round.
    v.info.insert(v.info.begin(), {"k", std::to_string(r.k)});
    return v;
}

namespace {

struct BruteForce {
    const Net& s;
    const Net& d;
    int enum_cap;
    bool weak;
    bool prune;
    std::map<std::tuple<int, int, int, int, int>, bool> memo;

    std::vector<Configuration> spoiler_targets(const Successor& x, int rounds_left) const {
        if (!x.omega) return {{x.state, x.counter}};
        std::vector<Configuration> out;
        for (int v = x.counter + 1; v <= std::max(x.counter, enum_cap); ++v) out.push_back({x.state, v});
        out.push_back({x.state, std::max(x.counter, enum_cap) + 1 + rounds_left});
        return out;
    }

    std::vector<Configuration> strong_answers(Configuration c, const std::string& label, int rounds_left) const {
        std::vector<Configuration> out;
        for (const auto& x : successors(d, c)) {
            if (x.label != label) continue;
            auto t = spoiler_targets(x, rounds_left);
            out.insert(out.end(), t.begin(), t.end());
        }
        return out;
    }

    // tau* closure with counters bounded by `bound`.
    std::vector<Configuration> silent_closure(const std::vector<Configuration>& from, int bound) const {
        std::vector<Configuration> seen = from, work = from;
        auto known = [&](Configuration c) { return std::find(seen.begin(), seen.end(), c) != seen.end(); };
        while (!work.empty()) {
            auto c = work.back();
            work.pop_back();
            for (const auto& st : bounded_successors(d, c, std::max(bound, c.counter)))
                if (is_silent(st.label) && st.to.counter <= bound && !known(st.to)) {
                    seen.push_back(st.to);
                    work.push_back(st.to);
                }
        }
        return seen;
    }

    std::vector<Configuration> weak_answers(Configuration c, const std::string& label) const {
        // Leave room above the current counter for one direct path, otherwise a
        // pruned answer sitting on the bound could never increment again.
        const int slack = 3 * static_cast<int>(d.num_states()) + 2;
        const int bound = std::max(enum_cap, c.counter + slack);
        auto pre = silent_closure({c}, bound);
        std::vector<Configuration> out;
        if (is_silent(label)) out = pre;
        else {
            std::vector<Configuration> mid;
            for (auto x : pre)
                for (const auto& st : bounded_successors(d, x, std::max(bound, x.counter)))
                    if (st.label == label && st.to.counter <= bound &&
                        std::find(mid.begin(), mid.end(), st.to) == mid.end())
                        mid.push_back(st.to);
            out = silent_closure(mid, bound);
        }
        if (prune) {
            std::map<int, int> best;
            for (auto x : out) best[x.state] = std::max(best.count(x.state) ? best[x.state] : -1, x.counter);
            out.clear();
            for (auto [q, n] : best) out.push_back({q, n});
        }
        return out;
    }

    bool win(Configuration sp, Configuration dp, int rounds) {
        if (rounds == 0) return true;
        auto key = std::make_tuple(sp.state, sp.counter, dp.state, dp.counter, rounds);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool ok = true;
        for (const auto& x : successors(s, sp)) {
            for (auto sp2 : spoiler_targets(x, rounds - 1)) {
                auto answers = weak ? weak_answers(dp, x.label) : strong_answers(dp, x.label, rounds - 1);
                bool answered = false;
                for (auto dp2 : answers)
                    if (win(sp2, dp2, rounds - 1)) {
                        answered = true;
                        break;
                    }
                if (!answered) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        memo[key] = ok;
        return ok;
    }
};

}  // namespace

bool brute_force_game(const Net& s, const Net& d, Configuration sp, Configuration dp, int alpha, int enum_cap,
                      bool weak) {
    BruteForce bf{s, d, enum_cap, weak, d.kind != NetKind::oca, {}};
    return bf.win(sp, dp, alpha);
}

WitnessPlay extract_witness(const Net& s, const Net& d, Configuration sp, Configuration dp, int alpha) {
    if (alpha < 1) throw std::invalid_argument("position is not refuted at level 0");
    Arena a(s, d);
    auto space = SpoilerSpace::rows(a, sp.counter + alpha);
    SystemBuilder builder(a, space, 0);
    int root = builder.add_root(0, space.id(sp.state, a.spoiler_is_fs() ? 0 : sp.counter), dp.state);
    auto sys = builder.build();
    std::vector<std::vector<int>> lv{std::vector<int>(sys.size(), 0)};
    for (int j = 1; j <= alpha; ++j) lv.push_back(sys.step(lv.back()));
    if (lv[alpha][root] <= dp.counter) throw std::invalid_argument("position survives " + std::to_string(alpha) + " rounds");

    auto refuted_at = [&](int comp, int n) {
        for (int j = 0; j <= alpha; ++j)
            if (lv[j][comp] > n) return j;
        return alpha + 1;
    };

    WitnessPlay play;
    int comp = root, m = a.spoiler_is_fs() ? 0 : sp.counter, n = dp.counter;
    int level = refuted_at(comp, n);
    for (;;) {
        const auto& key = builder.key(comp);
        const auto& prev = lv[level - 1];
        const detail::Move* chosen = nullptr;
        for (const auto& mv : sys.moves[comp]) {
            bool all_fail = true;
            for (const auto& r : mv.responses)
                if (sys.requirement(r, prev, nullptr) <= n) {
                    all_fail = false;
                    break;
                }
            if (all_fail) {
                chosen = &mv;
                break;
            }
        }
        if (!chosen) throw std::logic_error("witness extraction lost the refuting move");
        const auto& st = s.trans[chosen->strans];
        const int p = space.configs[key.config].state;
        const int m2 = a.spoiler_is_fs() ? 0 : m + st.delta;
        play.steps.push_back({true, s.state_name(p), m, st.label, s.state_name(st.dst), m2});

        // Duplicator: the response that survives longest, lowest transition index first.
        int best_r = -1, best_survive = -1, best_n = 0;
        for (std::size_t i = 0; i < chosen->responses.size(); ++i) {
            const auto& r = chosen->responses[i];
            const auto& t = d.trans[r.dtrans];
            int n2;
            if (t.delta == OMEGA) n2 = std::max(n + 1, level);
            else if (n + t.delta < 0) continue;
            else n2 = d.kind == NetKind::fs ? 0 : n + t.delta;
            int survive = refuted_at(r.target, n2);
            if (survive > best_survive ||
                (survive == best_survive && r.dtrans < chosen->responses[best_r].dtrans)) {
                best_r = static_cast<int>(i);
                best_survive = survive;
                best_n = n2;
            }
        }
        const int q = key.q;
        if (best_r < 0) {
            play.terminal = "D has no " + st.label + " move from " + d.state_name(q) + " " + std::to_string(n);
            return play;
        }
        const auto& r = chosen->responses[best_r];
        const auto& t = d.trans[r.dtrans];
        play.steps.push_back({false, d.state_name(q), n, t.label, d.state_name(t.dst), best_n});
        comp = r.target;
        m = m2;
        n = best_n;
        level = best_survive;
        if (level > alpha) throw std::logic_error("witness extraction reached a surviving position");
    }
}

bool replay_witness(const Net& s, const Net& d, const WitnessPlay& play) {
    if (play.steps.empty() || !play.steps.back().spoiler) return false;
    auto fits = [](const Net& net, const PlayStep& st) {
        int from = net.find_state(st.from), to = net.find_state(st.to);
        if (from < 0 || to < 0) return false;
        for (const auto& x : successors(net, {from, st.from_counter})) {
            if (x.label != st.label || x.state != to) continue;
            if (x.omega ? st.to_counter > st.from_counter : st.to_counter == x.counter) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < play.steps.size(); ++i) {
        const auto& st = play.steps[i];
        if (st.spoiler != (i % 2 == 0)) return false;
        if (!fits(st.spoiler ? s : d, st)) return false;
        if (!st.spoiler && st.label != play.steps[i - 1].label) return false;
        if (i >= 2) {
            const auto& before = play.steps[i - 2];
            if (before.to != st.from || before.to_counter != st.from_counter) return false;
        }
    }
    // The terminal reason ends with Duplicator's final configuration.
    const auto& last = play.steps.back();
    std::istringstream in(play.terminal);
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    if (words.size() < 2) return false;
    const std::string q = words[words.size() - 2];
    int n = 0;
    try {
        n = std::stoi(words.back());
    } catch (const std::exception&) {
        return false;
    }
    if (play.steps.size() >= 2) {
        const auto& dl = play.steps[play.steps.size() - 2];
        if (dl.to != q || dl.to_counter != n) return false;
    }
    int qi = d.find_state(q);
    if (qi < 0) return false;
    for (const auto& x : successors(d, {qi, n}))
        if (x.label == last.label) return false;
    return true;
}

}  // namespace ocnwb
