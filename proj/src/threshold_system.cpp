#include "threshold_system.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "ocnwb/games.hpp"

namespace ocnwb::detail {

Arena::Arena(const Net& s, const Net& d) : s_(s), d_(d) {
    if (s.kind != NetKind::ocn && s.kind != NetKind::fs)
        throw std::invalid_argument("spoiler net must be an ocn or fs");
    if (d.kind != NetKind::ocn && d.kind != NetKind::omega && d.kind != NetKind::fs)
        throw std::invalid_argument("duplicator net must be an ocn, omega or fs");
    std::map<std::string, int> ids;
    auto id = [&](const std::string& l) {
        auto [it, fresh] = ids.emplace(l, static_cast<int>(labels_.size()));
        if (fresh) labels_.push_back(l);
        return it->second;
    };
    for (const auto& t : s.trans) s_label_.push_back(id(t.label));
    std::vector<int> d_label;
    for (const auto& t : d.trans) d_label.push_back(id(t.label));
    d_out_.assign(d.num_states(), std::vector<std::vector<int>>(labels_.size()));
    for (std::size_t i = 0; i < d.trans.size(); ++i) d_out_[d.trans[i].src][d_label[i]].push_back(static_cast<int>(i));
    shadowed_.assign(d.trans.size(), 0);
    for (std::size_t i = 0; i < d.trans.size(); ++i) {
        const auto& t = d.trans[i];
        if (t.delta == OMEGA) continue;
        for (int j : d_out_[t.src][d_label[i]])
            if (d.trans[j].delta == OMEGA && d.trans[j].dst == t.dst) shadowed_[i] = 1;
    }
}

const std::vector<int>& Arena::dup_out(int q, int label) const {
    if (label < 0 || label >= static_cast<int>(d_out_[q].size())) return empty_;
    return d_out_[q][label];
}

int SpoilerSpace::intern(Configuration c) {
    long long key = static_cast<long long>(c.state) * 0x100000000LL + c.counter;
    auto [it, fresh] = index_.emplace(key, static_cast<int>(configs.size()));
    if (fresh) {
        configs.push_back(c);
        moves.emplace_back();
    }
    return it->second;
}

int SpoilerSpace::id(int p, int m) const {
    if (width_ > 0) return p * width_ + std::min(m, width_ - 1);
    auto it = index_.find(static_cast<long long>(p) * 0x100000000LL + m);
    return it == index_.end() ? -1 : it->second;
}

SpoilerSpace SpoilerSpace::rows(const Arena& a, int top) {
    const Net& s = a.spoiler();
    SpoilerSpace sp;
    sp.width_ = a.spoiler_is_fs() ? 1 : top + 1;
    for (int p = 0; p < static_cast<int>(s.num_states()); ++p)
        for (int m = 0; m < sp.width_; ++m) sp.intern({p, m});
    for (std::size_t c = 0; c < sp.configs.size(); ++c) {
        auto [p, m] = sp.configs[c];
        for (std::size_t i = 0; i < s.trans.size(); ++i) {
            const auto& t = s.trans[i];
            if (t.src != p || m + t.delta < 0) continue;
            int m2 = std::min(m + t.delta, sp.width_ - 1);
            sp.moves[c].push_back({static_cast<int>(i), a.spoiler_label(static_cast<int>(i)), sp.id(t.dst, m2)});
        }
    }
    return sp;
}

SpoilerSpace SpoilerSpace::classes(const Arena& a, int cap, bool absorbing) {
    if (cap < 2) throw std::invalid_argument("cap must be at least 2");
    const Net& s = a.spoiler();
    SpoilerSpace sp;
    sp.width_ = a.spoiler_is_fs() ? 1 : cap + 1;
    for (int p = 0; p < static_cast<int>(s.num_states()); ++p)
        for (int m = 0; m < sp.width_; ++m) sp.intern({p, m});
    for (std::size_t c = 0; c < sp.configs.size(); ++c) {
        auto [p, m] = sp.configs[c];
        for (std::size_t i = 0; i < s.trans.size(); ++i) {
            const auto& t = s.trans[i];
            if (t.src != p || m + t.delta < 0) continue;
            const int label = a.spoiler_label(static_cast<int>(i));
            if (sp.width_ == 1) {
                sp.moves[c].push_back({static_cast<int>(i), label, sp.id(t.dst, 0)});
            } else if (m < cap) {
                sp.moves[c].push_back({static_cast<int>(i), label, sp.id(t.dst, std::min(m + t.delta, cap))});
            } else {
                sp.moves[c].push_back({static_cast<int>(i), label, sp.id(t.dst, cap)});
                if (t.delta < 0 && !absorbing)
                    sp.moves[c].push_back({static_cast<int>(i), label, sp.id(t.dst, cap - 1)});
            }
        }
    }
    return sp;
}

SpoilerSpace SpoilerSpace::shifted(const Arena& a, int top) {
    if (top < 1) throw std::invalid_argument("top must be at least 1");
    const Net& s = a.spoiler();
    SpoilerSpace sp;
    sp.width_ = a.spoiler_is_fs() ? 1 : top + 2;
    for (int p = 0; p < static_cast<int>(s.num_states()); ++p)
        for (int m = 0; m < sp.width_; ++m) sp.intern({p, m});
    const int virt = top + 1;
    for (std::size_t c = 0; c < sp.configs.size(); ++c) {
        auto [p, m] = sp.configs[c];
        for (std::size_t i = 0; i < s.trans.size(); ++i) {
            const auto& t = s.trans[i];
            if (t.src != p) continue;
            const int label = a.spoiler_label(static_cast<int>(i));
            const int ti = static_cast<int>(i);
            if (sp.width_ == 1) {
                sp.moves[c].push_back({ti, label, sp.id(t.dst, 0), 0});
            } else if (m < virt) {
                if (m + t.delta < 0) continue;
                sp.moves[c].push_back({ti, label, sp.id(t.dst, m + t.delta), 0});
            } else if (t.delta < 0) {
                // m = top+1 lands on row top; larger m stay in the shifted row.
                sp.moves[c].push_back({ti, label, sp.id(t.dst, top), 0});
                sp.moves[c].push_back({ti, label, sp.id(t.dst, virt), -1});
            } else {
                sp.moves[c].push_back({ti, label, sp.id(t.dst, virt), t.delta});
            }
        }
    }
    return sp;
}

SpoilerSpace SpoilerSpace::reachable(const Arena& a, Configuration root, int bound) {
    const Net& s = a.spoiler();
    SpoilerSpace sp;
    if (a.spoiler_is_fs()) root.counter = 0;
    if (root.counter > bound) throw RankInapplicable("spoiler counter exceeds the declared bound");
    sp.intern(root);
    for (std::size_t c = 0; c < sp.configs.size(); ++c) {
        auto [p, m] = sp.configs[c];
        for (std::size_t i = 0; i < s.trans.size(); ++i) {
            const auto& t = s.trans[i];
            if (t.src != p || m + t.delta < 0) continue;
            int m2 = a.spoiler_is_fs() ? 0 : m + t.delta;
            if (m2 > bound) throw RankInapplicable("spoiler counter exceeds the declared bound");
            int target = sp.intern({t.dst, m2});
            sp.moves[c].push_back({static_cast<int>(i), a.spoiler_label(static_cast<int>(i)), target});
        }
    }
    return sp;
}

int ThresholdSystem::requirement(const Response& r, const std::vector<int>& x, const std::vector<char>* avail) const {
    if (r.delta == OMEGA) {
        if (r.target < 0) return 0;
        bool ok = avail ? (*avail)[r.target] != 0 : x[r.target] != INF;
        return ok ? 0 : INF;
    }
    int t = x[r.target];
    if (t == INF) return INF;
    int v = std::max({0, -r.delta, t + r.shift - r.delta});
    if (cap >= 0) {
        if (absorbing && r.delta < 0) v = std::min(v, cap);
        if (v > cap) return INF;
    }
    return v;
}

int ThresholdSystem::eval(int i, const std::vector<int>& x, const std::vector<char>* avail) const {
    int worst = 0;
    for (const auto& mv : moves[i]) {
        int best = INF;
        for (const auto& r : mv.responses) {
            best = std::min(best, requirement(r, x, avail));
            if (best == 0) break;
        }
        worst = std::max(worst, best);
        if (worst == INF) break;
    }
    return worst;
}

std::vector<int> ThresholdSystem::step(const std::vector<int>& x) const {
    std::vector<int> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = eval(static_cast<int>(i), x, nullptr);
    return y;
}

// Chaotic iteration from the all-zero vector. The operator is monotone and
// the capped lattice finite, so the worklist order does not change the result.
std::vector<int> ThresholdSystem::gfp() const {
    if (cap < 0) throw std::logic_error("gfp iteration needs a capped system");
    const std::size_t n = size();
    std::vector<std::vector<int>> preds(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& mv : moves[i])
            for (const auto& r : mv.responses)
                if (r.target >= 0) preds[r.target].push_back(static_cast<int>(i));
    std::vector<int> x(n, 0);
    std::deque<int> work;
    std::vector<char> queued(n, 1);
    for (std::size_t i = 0; i < n; ++i) work.push_back(static_cast<int>(i));
    while (!work.empty()) {
        int i = work.front();
        work.pop_front();
        queued[i] = 0;
        if (x[i] == INF) continue;
        int v = eval(i, x);
        if (v <= x[i]) continue;
        x[i] = v;
        for (int p : preds[i])
            if (!queued[p]) {
                queued[p] = 1;
                work.push_back(p);
            }
    }
    return x;
}

SystemBuilder::SystemBuilder(const Arena& a, const SpoilerSpace& s, int layers, int cap, bool absorbing)
    : a_(a), s_(s), layers_(layers), cap_(cap), absorbing_(absorbing) {}

long long SystemBuilder::pack(int layer, int config, int q) const {
    long long nq = static_cast<long long>(a_.duplicator().num_states());
    long long nc = static_cast<long long>(s_.configs.size());
    return (static_cast<long long>(layer) * nc + config) * nq + q;
}

int SystemBuilder::intern(int layer, int config, int q) {
    auto [it, fresh] = ids_.emplace(pack(layer, config, q), static_cast<int>(keys_.size()));
    if (fresh) keys_.push_back({layer, config, q});
    return it->second;
}

int SystemBuilder::component(int layer, int config, int q) const {
    if (layers_ == 0) layer = 0;
    auto it = ids_.find(pack(layer, config, q));
    return it == ids_.end() ? -1 : it->second;
}

void SystemBuilder::add_all() {
    const int lo = layers_ == 0 ? 0 : 1, hi = layers_ == 0 ? 0 : layers_;
    for (int l = lo; l <= hi; ++l)
        for (int c = 0; c < static_cast<int>(s_.configs.size()); ++c)
            for (int q = 0; q < static_cast<int>(a_.duplicator().num_states()); ++q) intern(l, c, q);
}

int SystemBuilder::add_root(int layer, int config, int q) { return intern(layers_ == 0 ? 0 : layer, config, q); }

ThresholdSystem SystemBuilder::build() {
    ThresholdSystem sys;
    sys.cap = cap_;
    sys.absorbing = absorbing_;
    const Net& d = a_.duplicator();
    for (std::size_t i = 0; i < keys_.size(); ++i) {
        const Key k = keys_[i];
        std::vector<Move> mv;
        for (const auto& sm : s_.moves[k.config]) {
            Move m{sm.strans, sm.target, {}};
            for (int dt : a_.dup_out(k.q, sm.label)) {
                const auto& t = d.trans[dt];
                if (t.delta == OMEGA) {
                    int target = -1;
                    if (layers_ == 0) target = intern(0, sm.target, t.dst);
                    else if (k.layer > 1) target = intern(k.layer - 1, sm.target, t.dst);
                    m.responses.push_back({target, OMEGA, dt, 0});
                } else {
                    if (layers_ > 0 && a_.shadowed(dt)) continue;
                    m.responses.push_back({intern(k.layer, sm.target, t.dst), t.delta, dt, sm.shift});
                }
            }
            mv.push_back(std::move(m));
        }
        sys.moves.push_back(std::move(mv));
    }
    return sys;
}

OrdinalRun::OrdinalRun(const ThresholdSystem& sys) : sys_(sys) {
    if (sys.cap >= 0) throw std::logic_error("ordinal iteration needs exact arithmetic");
    const std::size_t n = sys.size();
    preds_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& mv : sys.moves[i])
            for (const auto& r : mv.responses)
                if (r.delta != OMEGA) preds_[r.target].push_back(static_cast<int>(i));
    for (auto& p : preds_) {
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
    }

    std::vector<int> x(n, 0);
    // Every phase that does not reach the fixpoint makes some component infinite,
    // so there are at most n+1 phases.
    for (std::size_t guard = 0; guard <= n + 1; ++guard) {
        auto lim = limit_of(x);
        phases_.push_back({x, lim});
        auto next = sys.step(lim);
        if (next == lim) {
            fixpoint_ = std::move(lim);
            return;
        }
        x = std::move(lim);
    }
    throw std::logic_error("ordinal iteration did not stabilise");
}

// Limit of step^k(x0) for k -> infinity. The set of components that become
// infinite at a finite stage depends only on which components are already
// infinite, so it is computed first. Afterwards OMEGA availability is fixed and
// the operator is a monotone min/max system with unit weights; a finite limit
// never exceeds the largest finite start value plus the size of the game graph
// (the energy-game bound), so anything beyond that bound diverges.
std::vector<int> OrdinalRun::limit_of(const std::vector<int>& x0) const {
    const std::size_t n = x0.size();
    std::vector<char> inf(n, 0);
    for (std::size_t i = 0; i < n; ++i) inf[i] = x0[i] == INF;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (inf[i]) continue;
            for (const auto& mv : sys_.moves[i]) {
                bool dead = true;
                for (const auto& r : mv.responses)
                    if (r.target < 0 || !inf[r.target]) {
                        dead = false;
                        break;
                    }
                if (dead) {
                    inf[i] = 1;
                    changed = true;
                    break;
                }
            }
        }
    }
    std::vector<char> avail(n);
    long long max_finite = 0, edges = 0;
    std::vector<int> y(x0);
    for (std::size_t i = 0; i < n; ++i) {
        avail[i] = !inf[i];
        if (inf[i]) y[i] = INF;
        else max_finite = std::max<long long>(max_finite, x0[i]);
        edges += static_cast<long long>(sys_.moves[i].size());
    }
    const long long bound = max_finite + 2 * static_cast<long long>(n) + edges + 2;

    std::deque<int> work;
    std::vector<char> queued(n, 1);
    for (std::size_t i = 0; i < n; ++i) work.push_back(static_cast<int>(i));
    while (!work.empty()) {
        int i = work.front();
        work.pop_front();
        queued[i] = 0;
        if (y[i] == INF) continue;
        int v = sys_.eval(i, y, &avail);
        if (v <= y[i]) continue;
        y[i] = v > bound ? INF : v;
        for (int p : preds_[i])
            if (!queued[p]) {
                queued[p] = 1;
                work.push_back(p);
            }
    }
    return y;
}

RankValue OrdinalRun::rank(int component, int n) const {
    for (std::size_t a = 0; a < phases_.size(); ++a) {
        const auto& ph = phases_[a];
        if (ph.limit[component] == INF || ph.limit[component] > n) {
            auto x = ph.start;
            int k = 0;
            while (x[component] <= n) {
                x = sys_.step(x);
                ++k;
            }
            return {false, static_cast<int>(a), k};
        }
    }
    return {true, 0, 0};
}

}  // namespace ocnwb::detail
