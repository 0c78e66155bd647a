#include "ocnwb/reduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>

#include "threshold_system.hpp"

namespace ocnwb {

std::string pair_label(const std::string& p, const std::string& q) { return "@pq/" + p + "/" + q; }

namespace {

void extend(const Net& n, int t, bool silent, std::vector<char>& seen, PathRec& cur, std::vector<PathRec>& out) {
    int u = cur.empty() ? -1 : cur.back().dst;
    if (u == -1) return;
    for (const auto& tr : n.trans) {
        if (tr.src != u || (silent && !is_silent(tr.label))) continue;
        if (tr.dst == t) {
            cur.push_back(tr);
            out.push_back(cur);
            cur.pop_back();
            continue;
        }
        if (seen[tr.dst]) continue;
        seen[tr.dst] = 1;
        cur.push_back(tr);
        extend(n, t, silent, seen, cur, out);
        cur.pop_back();
        seen[tr.dst] = 0;
    }
}

bool uses_tau(const Net& n) {
    return std::any_of(n.trans.begin(), n.trans.end(), [](const Transition& t) { return is_silent(t.label); });
}

PathRec concat(std::initializer_list<const PathRec*> parts) {
    PathRec r;
    for (const auto* p : parts) r.insert(r.end(), p->begin(), p->end());
    return r;
}

}  // namespace

DirectPathSet direct_paths(const Net& n, int s, int t, bool silent_only) {
    const int ns = static_cast<int>(n.num_states());
    if (s < 0 || s >= ns || t < 0 || t >= ns) throw std::invalid_argument("unknown state");
    DirectPathSet r{s, t, {}};
    if (s == t) r.paths.emplace_back();
    std::vector<char> seen(n.num_states(), 0);
    seen[s] = 1;
    for (const auto& tr : n.trans) {
        if (tr.src != s || (silent_only && !is_silent(tr.label))) continue;
        PathRec cur{tr};
        if (tr.dst == t) {
            r.paths.push_back(cur);
            continue;
        }
        if (seen[tr.dst]) continue;
        seen[tr.dst] = 1;
        extend(n, t, silent_only, seen, cur, r.paths);
        seen[tr.dst] = 0;
    }
    return r;
}

Net build_guarded_omega(const Net& n) { return build_guarded_omega(n, uses_tau(n)); }

Net build_guarded_omega(const Net& n, bool silent_loops) {
    if (n.kind != NetKind::ocn) throw std::invalid_argument("guarded construction expects an ocn");
    const int ns = static_cast<int>(n.num_states());
    std::vector<std::vector<std::vector<PathRec>>> sd(ns, std::vector<std::vector<PathRec>>(ns));
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ns; ++b) sd[a][b] = direct_paths(n, a, b, true).paths;

    // Keyed by (p, label, delta, q); keeps first-seen order and the smallest guard.
    std::map<std::tuple<int, std::string, int, int>, std::size_t> where;
    std::vector<Transition> out;
    auto put = [&](int p, const std::string& a, int g, int d, int q) {
        auto key = std::make_tuple(p, a, d, q);
        auto it = where.find(key);
        if (it == where.end()) {
            where.emplace(key, out.size());
            out.push_back(Transition{p, a, g, d, q});
        } else if (g < out[it->second].guard) {
            out[it->second].guard = g;
        }
    };

    for (const auto& tr : n.trans) {
        const int s = tr.src, s2 = tr.dst;
        const PathRec step{tr};
        for (int p = 0; p < ns; ++p) {
            for (const auto& pi1 : sd[p][s]) {
                PathRec head = concat({&pi1, &step});
                for (int q = 0; q < ns; ++q)
                    for (const auto& pi2 : sd[s2][q]) {
                        PathRec full = concat({&head, &pi2});
                        put(p, tr.label, path_guard(full), path_effect(full), q);
                    }
            }
        }
        // Positive silent cycle before the visible step.
        for (int p = 0; p < ns; ++p)
            for (int w = 0; w < ns; ++w) {
                if (sd[w][s].empty()) continue;
                for (const auto& c1 : sd[p][w])
                    for (const auto& c2 : sd[w][w]) {
                        if (c2.empty() || path_effect(c2) <= 0) continue;
                        int g = path_guard(concat({&c1, &c2}));
                        for (int q = 0; q < ns; ++q)
                            if (!sd[s2][q].empty()) put(p, tr.label, g, OMEGA, q);
                    }
            }
        // Positive silent cycle after the visible step.
        for (int p = 0; p < ns; ++p)
            for (const auto& pi1 : sd[p][s]) {
                PathRec head = concat({&pi1, &step});
                for (int w = 0; w < ns; ++w)
                    for (const auto& c1 : sd[s2][w])
                        for (const auto& c2 : sd[w][w]) {
                            if (c2.empty() || path_effect(c2) <= 0) continue;
                            int g = path_guard(concat({&head, &c1, &c2}));
                            for (int q = 0; q < ns; ++q)
                                if (!sd[w][q].empty()) put(p, tr.label, g, OMEGA, q);
                        }
            }
    }
    if (silent_loops)
        for (int p = 0; p < ns; ++p) put(p, std::string(TAU), 0, 0, p);

    Net g(NetKind::gomega, n.name);
    for (const auto& s : n.states()) g.add_state(s);
    g.trans = std::move(out);
    return g;
}

int round_factor(const Net& g, int* gamma, int* delta) {
    int gm = 0, dm = 0;
    for (const auto& t : g.trans) {
        gm = std::max(gm, t.guard);
        if (t.delta != OMEGA) dm = std::max(dm, std::abs(t.delta));
    }
    if (gamma) *gamma = gm;
    if (delta) *delta = dm;
    return 2 * gm + dm + 1;
}

std::vector<std::string> ReductionOutput::header() const {
    std::vector<std::string> h;
    h.push_back("source spoiler=" + spoiler.name + " duplicator=" + duplicator.name);
    h.push_back("k=" + std::to_string(k) + " gamma=" + std::to_string(gamma) + " delta=" + std::to_string(delta));
    std::string sm = "spoiler-map";
    for (std::size_t i = 0; i < spoiler_map.size(); ++i)
        sm += " " + spoiler.state_name(spoiler_map[i]) + "->" + std::to_string(spoiler_map[i]);
    h.push_back(sm);
    std::string dm = "duplicator-map";
    for (std::size_t i = 0; i < duplicator_map.size(); ++i)
        dm += " " + duplicator.state_name(duplicator_map[i]) + "->" + std::to_string(duplicator_map[i]);
    h.push_back(dm);
    return h;
}

ReductionOutput normalize(const Net& m, const Net& g) {
    if (m.kind != NetKind::ocn) throw std::invalid_argument("normalize expects an ocn spoiler net");
    if (g.kind != NetKind::gomega && g.kind != NetKind::omega && g.kind != NetKind::ocn)
        throw std::invalid_argument("normalize expects a guarded omega-net");
    ReductionOutput r;
    r.k = round_factor(g, &r.gamma, &r.delta);
    const int k = r.k;

    Net sp(NetKind::ocn, m.name + "'");
    for (const auto& s : m.states()) r.spoiler_map.push_back(sp.add_state(s));
    // Chain q_{k-1} ... q_1 in front of every target state q.
    auto chain = [&](int q, int i) { return "@chain/s/" + m.state_name(q) + "/" + std::to_string(i); };
    std::vector<char> has_chain(m.num_states(), 0);
    for (const auto& t : m.trans) {
        if (k == 1) {
            sp.add(m.state_name(t.src), t.label, t.delta, m.state_name(t.dst));
            continue;
        }
        sp.add(m.state_name(t.src), t.label, t.delta, chain(t.dst, k - 1));
        if (has_chain[t.dst]) continue;
        has_chain[t.dst] = 1;
        for (int i = k - 1; i > 1; --i) sp.add(chain(t.dst, i), LABEL_B, 0, chain(t.dst, i - 1));
        sp.add(chain(t.dst, 1), LABEL_B, 0, m.state_name(t.dst));
    }

    Net dp(NetKind::omega, g.name + "'");
    for (const auto& s : g.states()) r.duplicator_map.push_back(dp.add_state(s));
    for (std::size_t j = 0; j < g.trans.size(); ++j) {
        const auto& t = g.trans[j];
        // Unit steps: guard test (down then up), then the effect, padded with zeros.
        std::vector<int> units;
        for (int i = 0; i < t.guard; ++i) units.push_back(-1);
        for (int i = 0; i < t.guard; ++i) units.push_back(+1);
        if (t.delta == OMEGA) {
            units.push_back(OMEGA);
        } else {
            for (int i = 0; i < std::abs(t.delta); ++i) units.push_back(t.delta > 0 ? +1 : -1);
        }
        if (static_cast<int>(units.size()) > k) throw std::logic_error("gadget longer than round factor");
        units.resize(static_cast<std::size_t>(k), 0);
        auto node = [&](int i) {
            return i == 0 ? g.state_name(t.dst) : "@chain/d/" + std::to_string(j) + "/" + std::to_string(i);
        };
        dp.add(g.state_name(t.src), t.label, units[0], node(k - 1));
        for (int i = k - 1; i >= 1; --i) dp.add(node(i), LABEL_B, units[static_cast<std::size_t>(k - i)], node(i - 1));
    }
    r.spoiler = std::move(sp);
    r.duplicator = std::move(dp);
    return r;
}

ReductionOutput weak_to_strong(const Net& m, const Net& n) {
    Net g = build_guarded_omega(n, uses_tau(m) || uses_tau(n));
    return normalize(m, g);
}

TestGadget build_test_gadget(int mval, const std::string& p, const std::string& q) {
    TestGadget r;
    const std::string base = "@gadget/" + p + "/" + q;
    r.s = Net(NetKind::ocn, "S" + base);
    r.t = Net(NetKind::ocn, "T" + base);
    r.s0 = r.s.add_state(base + "/s0");
    if (mval != OMEGA) {
        for (int i = 0; i < mval; ++i)
            r.s.add(base + "/s" + std::to_string(i), LABEL_E, -1, base + "/s" + std::to_string(i + 1));
        r.s.add(base + "/s" + std::to_string(mval), LABEL_F, 0, base + "/done");
    }
    r.t0 = r.t.add_state(base + "/t");
    r.t.add(base + "/t", LABEL_E, 0, base + "/t");
    return r;
}

StepNets build_step_nets(const Net& n, const Net& nprime, const MTable& mtab) {
    const int np = static_cast<int>(n.num_states()), nq = static_cast<int>(nprime.num_states());
    if (static_cast<int>(mtab.entries.size()) != np) throw std::invalid_argument("m-table does not cover N");
    for (const auto& row : mtab.entries)
        if (static_cast<int>(row.size()) != nq) throw std::invalid_argument("m-table does not cover N'");

    std::vector<std::string> act = n.actions();
    for (const auto& a : nprime.actions())
        if (std::find(act.begin(), act.end(), a) == act.end()) act.push_back(a);

    StepNets r;
    Net& ns = r.spoiler;
    Net& nd = r.duplicator;
    ns = Net(NetKind::ocn, n.name + "_S");
    nd = Net(NetKind::ocn, nprime.name + "_D");
    for (const auto& s : n.states()) ns.add_state(s);
    for (const auto& s : nprime.states()) nd.add_state(s);
    for (const auto& t : n.trans) ns.add(t.src, t.label, t.delta, t.dst);
    for (const auto& t : nprime.trans)
        if (t.delta != OMEGA) nd.add(t.src, t.label, t.delta, t.dst);
    const std::string w = "@w/W";

    std::vector<std::vector<TestGadget>> gad(np);
    for (int p = 0; p < np; ++p)
        for (int q = 0; q < nq; ++q) gad[p].push_back(build_test_gadget(mtab.at(p, q), n.state_name(p), nprime.state_name(q)));

    for (int p = 0; p < np; ++p)
        for (int q = 0; q < nq; ++q) {
            const auto& g = gad[p][q];
            ns.add(n.state_name(p), pair_label(n.state_name(p), nprime.state_name(q)), 0, g.s.state_name(g.s0));
            for (const auto& t : g.s.trans) ns.add(g.s.state_name(t.src), t.label, t.delta, g.s.state_name(t.dst));
            ns.add_state(g.s.state_name(g.s0));
        }

    auto tname = [&](int p, int q) { return gad[p][q].t.state_name(gad[p][q].t0); };
    for (const auto& t : nprime.trans)
        if (t.delta == OMEGA)
            for (int p = 0; p < np; ++p) nd.add(nprime.state_name(t.src), t.label, 0, tname(p, t.dst));
    for (int q = 0; q < nq; ++q)
        for (int p2 = 0; p2 < np; ++p2)
            for (int q2 = 0; q2 < nq; ++q2)
                nd.add(nprime.state_name(q), pair_label(n.state_name(p2), nprime.state_name(q2)), 0, w);
    for (int p = 0; p < np; ++p)
        for (int q = 0; q < nq; ++q) {
            const auto& g = gad[p][q];
            const std::string tp = tname(p, q);
            for (const auto& t : g.t.trans) nd.add(g.t.state_name(t.src), t.label, t.delta, g.t.state_name(t.dst));
            nd.add(tp, pair_label(n.state_name(p), nprime.state_name(q)), 0, tp);
            for (int q2 = 0; q2 < nq; ++q2)
                if (q2 != q) nd.add(tp, pair_label(n.state_name(p), nprime.state_name(q2)), 0, w);
            for (const auto& a : act) nd.add(tp, a, 0, w);
        }
    std::vector<std::string> all = act;
    for (int p = 0; p < np; ++p)
        for (int q = 0; q < nq; ++q) all.push_back(pair_label(n.state_name(p), nprime.state_name(q)));
    all.push_back(LABEL_E);
    all.push_back(LABEL_F);
    for (const auto& a : all) nd.add(w, a, 0, w);
    return r;
}

MTable compute_m_table(const Net& n, const Net& nprime, int k, int search_bound) {
    MTable t;
    t.level = k;
    t.spoiler_states = n.states();
    t.dup_states = nprime.states();
    const int np = static_cast<int>(n.num_states()), nq = static_cast<int>(nprime.num_states());
    t.entries.assign(np, std::vector<int>(nq, OMEGA));
    if (k <= 0) return t;
    if (search_bound < 0) throw std::invalid_argument("negative search bound");

    const int top = search_bound + 1;
    detail::Arena arena(n, nprime);
    auto space = detail::SpoilerSpace::rows(arena, top);
    detail::SystemBuilder b(arena, space, k);
    b.add_all();
    auto sys = b.build();
    detail::OrdinalRun run(sys);
    const auto& fix = run.final_thresholds();
    for (int p = 0; p < np; ++p)
        for (int q = 0; q < nq; ++q) {
            int found = OMEGA;
            for (int m = 0; m <= search_bound && found == OMEGA; ++m)
                if (fix[b.component(k, space.id(p, m), q)] == detail::INF) found = m;
            t.entries[p][q] = found;
            if (found != OMEGA) continue;
            if (fix[b.component(k, space.id(p, top - 1), q)] != fix[b.component(k, space.id(p, top), q)])
                t.diagnostics.push_back("bound reached " + n.state_name(p) + " " + nprime.state_name(q));
        }
    return t;
}

}  // namespace ocnwb
