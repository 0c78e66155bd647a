#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace oracle {

std::set<Conf> weak_steps(const Net& n, Configuration c, const std::string& a, int cap) {
    auto closure = [&](std::set<Conf> from) {
        std::deque<Conf> work(from.begin(), from.end());
        while (!work.empty()) {
            auto [q, m] = work.front();
            work.pop_front();
            for (const auto& s : ocnwb::bounded_successors(n, {q, m}, std::max(cap, m)))
                if (ocnwb::is_silent(s.label) && s.to.counter <= cap && from.insert({s.to.state, s.to.counter}).second)
                    work.push_back({s.to.state, s.to.counter});
        }
        return from;
    };
    auto pre = closure({{c.state, c.counter}});
    if (ocnwb::is_silent(a)) return pre;
    std::set<Conf> mid;
    for (auto [q, m] : pre)
        for (const auto& s : ocnwb::bounded_successors(n, {q, m}, std::max(cap, m)))
            if (s.label == a && s.to.counter <= cap) mid.insert({s.to.state, s.to.counter});
    return closure(mid);
}

int guard_by_simulation(const ocnwb::PathRec& p) {
    for (int m = 0;; ++m) {
        int c = m;
        bool ok = true;
        for (const auto& t : p) {
            c += t.delta;
            if (c < 0) ok = false;
        }
        if (ok) return m;
    }
}

std::set<Conf> silent_reach(const Net& fs) {
    std::set<Conf> out;
    for (int s = 0; s < static_cast<int>(fs.num_states()); ++s) {
        std::vector<int> stack{s};
        std::set<int> seen{s};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            out.insert({s, x});
            for (const auto& t : fs.trans)
                if (t.src == x && ocnwb::is_silent(t.label) && seen.insert(t.dst).second) stack.push_back(t.dst);
        }
    }
    return out;
}

long long wfa_best_run(const Net& wfa, const Word& w) {
    long long best = -1;
    std::function<void(int, std::size_t, long long)> go = [&](int q, std::size_t i, long long v) {
        if (i == w.size()) {
            best = std::max(best, v);
            return;
        }
        for (const auto& t : wfa.trans)
            if (t.src == q && t.label == w[i]) go(t.dst, i + 1, v + t.delta);
    };
    go(wfa.init, 0, 0);
    return best;
}

std::set<Word> traces(const Net& n, Configuration c, int len) {
    std::set<Word> out;
    Word cur;
    std::function<void(Configuration)> go = [&](Configuration x) {
        out.insert(cur);
        if (static_cast<int>(cur.size()) == len) return;
        for (const auto& s : ocnwb::successors(n, x)) {
            cur.push_back(s.label);
            go({s.state, s.counter});
            cur.pop_back();
        }
    };
    go(c);
    return out;
}

bool fs_strong_sim(const Net& a, int s, const Net& b, int t) {
    std::set<Conf> rel;
    for (int i = 0; i < static_cast<int>(a.num_states()); ++i)
        for (int j = 0; j < static_cast<int>(b.num_states()); ++j) rel.insert({i, j});
    for (bool changed = true; changed;) {
        changed = false;
        for (auto it = rel.begin(); it != rel.end();) {
            auto [i, j] = *it;
            bool ok = std::all_of(a.trans.begin(), a.trans.end(), [&](const ocnwb::Transition& x) {
                if (x.src != i) return true;
                return std::any_of(b.trans.begin(), b.trans.end(), [&](const ocnwb::Transition& y) {
                    return y.src == j && y.label == x.label && rel.count({x.dst, y.dst});
                });
            });
            if (ok) ++it;
            else {
                it = rel.erase(it);
                changed = true;
            }
        }
    }
    return rel.count({s, t}) != 0;
}

}  // namespace oracle

namespace gen {

namespace {

ocnwb::Net make(std::mt19937& r, ocnwb::NetKind k, int max_states, int max_trans, bool silent, const std::string& name,
                int zero, int reward) {
    ocnwb::RandomShape sh;
    sh.states = uniform(r, 1, max_states);
    sh.transitions = uniform(r, 0, max_trans);
    sh.silent = silent;
    sh.zero_tests = zero;
    sh.max_reward = reward;
    return ocnwb::random_net(r, k, sh, name);
}

}  // namespace

ocnwb::Net ocn(std::mt19937& r, int max_states, int max_trans, bool silent, const std::string& name) {
    return make(r, ocnwb::NetKind::ocn, max_states, max_trans, silent, name, 0, 0);
}

ocnwb::Net fs(std::mt19937& r, int max_states, int max_trans, bool silent, const std::string& name) {
    return make(r, ocnwb::NetKind::fs, max_states, max_trans, silent, name, 0, 0);
}

ocnwb::Net oca(std::mt19937& r, int max_states, int max_trans, const std::string& name) {
    return make(r, ocnwb::NetKind::oca, max_states, max_trans, false, name, uniform(r, 0, 2), 0);
}

ocnwb::Net wfa(std::mt19937& r, int max_states, int max_trans, int max_reward, const std::string& name) {
    return make(r, ocnwb::NetKind::wfa, max_states, max_trans, false, name, 0, max_reward);
}

}  // namespace gen
