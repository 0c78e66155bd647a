#include "ocnwb/net.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace ocnwb {

std::string_view kind_name(NetKind k) {
    switch (k) {
        case NetKind::ocn: return "ocn";
        case NetKind::oca: return "oca";
        case NetKind::omega: return "omega";
        case NetKind::gomega: return "gomega";
        case NetKind::fs: return "fs";
        case NetKind::wfa: return "wfa";
    }
    return "?";
}

NetKind kind_from_name(std::string_view s) {
    for (NetKind k : {NetKind::ocn, NetKind::oca, NetKind::omega, NetKind::gomega, NetKind::fs, NetKind::wfa})
        if (kind_name(k) == s) return k;
    throw std::invalid_argument("unknown net kind '" + std::string(s) + "'");
}

int Net::add_state(const std::string& s) {
    auto it = index_.find(s);
    if (it != index_.end()) return it->second;
    int i = static_cast<int>(states_.size());
    states_.push_back(s);
    index_.emplace(s, i);
    return i;
}

int Net::find_state(std::string_view s) const {
    auto it = index_.find(std::string(s));
    return it == index_.end() ? -1 : it->second;
}

int Net::state(std::string_view s) const {
    int i = find_state(s);
    if (i < 0) throw UnknownState(std::string(s));
    return i;
}

void Net::add(int src, std::string label, int delta, int dst, int guard) {
    trans.push_back(Transition{src, std::move(label), guard, delta, dst});
}

void Net::add(const std::string& src, std::string label, int delta, const std::string& dst, int guard) {
    int s = add_state(src);
    int d = add_state(dst);
    add(s, std::move(label), delta, d, guard);
}

void Net::add_zero(const std::string& src, std::string label, int delta, const std::string& dst) {
    int s = add_state(src);
    int d = add_state(dst);
    ztrans.push_back(Transition{s, std::move(label), 0, delta, d});
}

std::vector<std::string> Net::actions() const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto* list : {&trans, &ztrans})
        for (const auto& t : *list)
            if (seen.insert(t.label).second) out.push_back(t.label);
    return out;
}

bool Net::has_omega() const {
    return std::any_of(trans.begin(), trans.end(), [](const Transition& t) { return t.delta == OMEGA; });
}

namespace {

bool delta_ok(NetKind k, int d) {
    switch (k) {
        case NetKind::ocn:
        case NetKind::oca: return d >= -1 && d <= 1;
        case NetKind::omega: return d == OMEGA || (d >= -1 && d <= 1);
        case NetKind::gomega: return true;
        case NetKind::fs: return d == 0;
        case NetKind::wfa: return d >= 0 && d != OMEGA;
    }
    return false;
}

}  // namespace

std::vector<std::string> validate(const Net& net) {
    std::vector<std::string> diags;
    const int n = static_cast<int>(net.num_states());
    auto check = [&](const std::vector<Transition>& list, const char* what, bool zero) {
        std::set<std::tuple<int, std::string, int, int, int>> seen;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto& t = list[i];
            std::string loc = std::string(what) + " " + std::to_string(i);
            if (t.src < 0 || t.src >= n || t.dst < 0 || t.dst >= n) diags.push_back(loc + ": unknown state");
            if (t.label.empty()) diags.push_back(loc + ": empty label");
            if (zero) {
                if (t.delta != 0 && t.delta != 1) diags.push_back(loc + ": delta out of range");
            } else if (!delta_ok(net.kind, t.delta)) {
                diags.push_back(loc + (net.kind == NetKind::wfa ? ": reward out of range" : ": delta out of range"));
            }
            if (t.guard < 0) diags.push_back(loc + ": negative guard");
            if (t.guard != 0 && net.kind != NetKind::gomega) diags.push_back(loc + ": guard not allowed");
            if (!seen.insert({t.src, t.label, t.guard, t.delta, t.dst}).second)
                diags.push_back(loc + ": duplicate transition");
        }
    };
    check(net.trans, "transition", false);
    if (!net.ztrans.empty() && net.kind != NetKind::oca) diags.push_back("zero transitions only allowed in oca");
    check(net.ztrans, "zero transition", true);
    if (net.kind == NetKind::wfa) {
        if (net.init < 0 || net.init >= n) diags.push_back("init: unknown state");
    } else if (net.init != -1) {
        diags.push_back("init only allowed in wfa");
    }
    return diags;
}

std::vector<Successor> successors(const Net& net, Configuration c) {
    if (c.state < 0 || c.state >= static_cast<int>(net.num_states()) || c.counter < 0)
        throw std::invalid_argument("invalid configuration");
    std::vector<Successor> out;
    for (std::size_t i = 0; i < net.trans.size(); ++i) {
        const auto& t = net.trans[i];
        if (t.src != c.state || c.counter < t.guard) continue;
        if (t.delta == OMEGA) {
            out.push_back({t.label, t.dst, c.counter, true, static_cast<int>(i), false});
        } else {
            long long m = static_cast<long long>(c.counter) + t.delta;
            if (m < 0) continue;
            out.push_back({t.label, t.dst, static_cast<int>(m), false, static_cast<int>(i), false});
        }
    }
    if (net.kind == NetKind::oca && c.counter == 0) {
        for (std::size_t i = 0; i < net.ztrans.size(); ++i) {
            const auto& t = net.ztrans[i];
            if (t.src == c.state) out.push_back({t.label, t.dst, t.delta, false, static_cast<int>(i), true});
        }
    }
    return out;
}

std::vector<Step> bounded_successors(const Net& net, Configuration c, int cap) {
    if (cap < c.counter) throw std::invalid_argument("cap below counter");
    std::vector<Step> out;
    for (const auto& s : successors(net, c)) {
        if (!s.omega) {
            out.push_back({s.label, {s.state, s.counter}, s.trans_index, s.zero});
            continue;
        }
        for (int v = s.counter + 1; v <= cap; ++v) out.push_back({s.label, {s.state, v}, s.trans_index, false});
    }
    return out;
}

bool path_well_formed(const PathRec& p) {
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i - 1].dst != p[i].src) return false;
    return true;
}

int path_effect(const PathRec& p) {
    int e = 0;
    for (const auto& t : p) e = add_delta(e, t.delta);
    return e;
}

int path_guard(const PathRec& p) {
    int e = 0, lowest = 0;
    for (const auto& t : p) {
        if (t.delta == OMEGA) throw std::invalid_argument("path guard undefined for OMEGA steps");
        e += t.delta;
        lowest = std::min(lowest, e);
    }
    return -lowest;
}

std::vector<std::string> path_obs(const PathRec& p) {
    std::vector<std::string> out;
    for (const auto& t : p)
        if (!is_silent(t.label)) out.push_back(t.label);
    return out;
}

}  // namespace ocnwb
