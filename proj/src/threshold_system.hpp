#pragma once

// Threshold representation of game relations between a Spoiler net with a
// finite (or finitely abstracted) configuration space and a Duplicator
// one-counter or omega-net. A component is (layer, spoiler configuration,
// duplicator state); its value is the least Duplicator counter that is in the
// relation, or INF.

#include <limits>
#include <unordered_map>
#include <vector>

#include "ocnwb/net.hpp"

namespace ocnwb::detail {

inline constexpr int INF = std::numeric_limits<int>::max();

class Arena {
public:
    Arena(const Net& s, const Net& d);

    const Net& spoiler() const { return s_; }
    const Net& duplicator() const { return d_; }
    bool spoiler_is_fs() const { return s_.kind == NetKind::fs; }
    int spoiler_label(int strans) const { return s_label_[strans]; }
    // Duplicator transitions leaving q with the given joint label id.
    const std::vector<int>& dup_out(int q, int label) const;
    // True for a normal transition whose (src, label, dst) also carries an OMEGA transition.
    bool shadowed(int dtrans) const { return shadowed_[dtrans] != 0; }
    const std::string& label_name(int id) const { return labels_[id]; }

private:
    Net s_, d_;
    std::vector<std::string> labels_;
    std::vector<int> s_label_;
    std::vector<std::vector<std::vector<int>>> d_out_;
    std::vector<char> shadowed_;
    std::vector<int> empty_;
};

struct SpoilerMove {
    int strans = 0;
    int label = 0;
    int target = 0;  // configuration id
    int shift = 0;   // added to the target's threshold (shifted space only)
};

class SpoilerSpace {
public:
    std::vector<Configuration> configs;
    std::vector<std::vector<SpoilerMove>> moves;

    // Counters 0..top; an increment at top stays at top.
    static SpoilerSpace rows(const Arena& a, int top);
    // Counter classes 0..cap-1 and ">= cap". With `absorbing` the top class is
    // closed under every step; otherwise a decrement from the top class yields
    // two obligations (cap-1 and >= cap).
    static SpoilerSpace classes(const Arena& a, int cap, bool absorbing);
    // Exactly the configurations reachable from `root`. Throws RankInapplicable
    // once a counter exceeds `bound`.
    static SpoilerSpace reachable(const Arena& a, Configuration root, int bound);
    // Counters 0..top plus one row standing for every m > top, read as
    // f(m) = f(top+1) + (m - top - 1). Moves into that row carry shifts.
    static SpoilerSpace shifted(const Arena& a, int top);

    int id(int p, int m) const;
    int width() const { return width_; }

private:
    int width_ = 0;  // 0 for the reachable space
    std::unordered_map<long long, int> index_;
    int intern(Configuration c);
};

struct Response {
    int target = -1;  // component id, -1 = the full relation
    int delta = 0;    // -1, 0, +1 or OMEGA
    int dtrans = 0;
    int shift = 0;
};

struct Move {
    int strans = 0;
    int target_config = 0;
    std::vector<Response> responses;
};

struct ThresholdSystem {
    std::vector<std::vector<Move>> moves;
    // Duplicator arithmetic: cap < 0 is exact; otherwise counters are classes
    // 0..cap and values above cap are INF. `absorbing` keeps the top class on decrement.
    int cap = -1;
    bool absorbing = false;

    std::size_t size() const { return moves.size(); }
    int requirement(const Response& r, const std::vector<int>& x, const std::vector<char>* avail) const;
    int eval(int i, const std::vector<int>& x, const std::vector<char>* avail = nullptr) const;
    std::vector<int> step(const std::vector<int>& x) const;
    // Iterates step from the all-zero vector until stable. Only terminates for capped systems.
    std::vector<int> gfp() const;
};

class SystemBuilder {
public:
    // layers == 0: one-dimensional approximants (OMEGA answers stay in the same layer).
    // layers >= 1: two-dimensional approximants with OMEGA budget layers 1..layers.
    SystemBuilder(const Arena& a, const SpoilerSpace& s, int layers, int cap = -1, bool absorbing = false);

    void add_all();
    int add_root(int layer, int config, int q);
    ThresholdSystem build();

    int component(int layer, int config, int q) const;  // -1 when not built
    int layers() const { return layers_; }
    struct Key {
        int layer, config, q;
    };
    const Key& key(int id) const { return keys_[id]; }

private:
    const Arena& a_;
    const SpoilerSpace& s_;
    int layers_;
    int cap_;
    bool absorbing_;
    std::unordered_map<long long, int> ids_;
    std::vector<Key> keys_;

    long long pack(int layer, int config, int q) const;
    int intern(int layer, int config, int q);
};

struct RankValue {
    bool infinite = true;
    int a = 0;
    int b = 0;
};

// Transfinite iteration of the approximant operator up to its fixpoint, one
// phase per limit ordinal.
class OrdinalRun {
public:
    explicit OrdinalRun(const ThresholdSystem& sys);

    RankValue rank(int component, int n) const;
    const std::vector<int>& final_thresholds() const { return fixpoint_; }
    std::size_t phases() const { return phases_.size(); }

private:
    const ThresholdSystem& sys_;
    std::vector<std::vector<int>> preds_;
    struct Phase {
        std::vector<int> start, limit;
    };
    std::vector<Phase> phases_;
    std::vector<int> fixpoint_;

    std::vector<int> limit_of(const std::vector<int>& x0) const;
};

}  // namespace ocnwb::detail
