#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ocnwb/net.hpp"

namespace ocnwb {

// Ordinal w*a+b below w^2, or the marker for "no such ordinal".
struct Ordinal2 {
    bool infinite = false;
    int a = 0;
    int b = 0;

    static Ordinal2 finite(int b) { return {false, 0, b}; }
    static Ordinal2 make(int a, int b) { return {false, a, b}; }
    static Ordinal2 inf() { return {true, 0, 0}; }

    std::string str() const;  // "w*a+b" or "inf"
    static Ordinal2 parse(const std::string& s);

    auto tie() const { return std::make_tuple(infinite, a, b); }
    bool operator==(const Ordinal2& o) const { return tie() == o.tie(); }
    bool operator<(const Ordinal2& o) const { return tie() < o.tie(); }
    bool operator<=(const Ordinal2& o) const { return !(o < *this); }
};

inline constexpr int ABSENT = -1;
inline constexpr int BETA_INFINITE = -1;

struct Bounds {
    int m_max = 0;
    int n_max = 0;
};

struct ThresholdGrid {
    std::string alpha = "0";
    std::string beta = "-";
    std::vector<std::string> spoiler_states;
    std::vector<std::string> dup_states;
    int m_max = 0;
    int n_max = 0;
    std::vector<int> min_n;  // [(p * (m_max+1) + m) * |Q'| + q], ABSENT or 0..n_max

    void resize(const Net& s, const Net& d, int mmax, int nmax);
    int& at(int p, int m, int q);
    int at(int p, int m, int q) const;
    bool member(int p, int m, int q, int n) const {
        int t = at(p, m, q);
        return t != ABSENT && n >= t;
    }
    std::string report() const;
    bool operator==(const ThresholdGrid&) const = default;
};

enum class VerdictKind { simulates, not_simulates, unknown };
std::string verdict_name(VerdictKind k);

struct PlayStep {
    bool spoiler = true;
    std::string from;
    int from_counter = 0;
    std::string label;
    std::string to;
    int to_counter = 0;
};

struct WitnessPlay {
    std::vector<PlayStep> steps;
    std::string terminal;  // why the last position is won by Spoiler
    std::string report() const;
};

struct Verdict {
    VerdictKind kind = VerdictKind::unknown;
    std::vector<std::pair<std::string, std::string>> info;  // key=value report lines
    std::optional<WitnessPlay> witness;
    std::optional<Ordinal2> rank;
    std::string report() const;
};

class RankInapplicable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact level-alpha approximant for an ocn or fs Spoiler against an ocn, omega or fs Duplicator.
ThresholdGrid approximant_finite(const Net& s, const Net& d, int alpha, Bounds b);
// Two-dimensional approximant: OMEGA answers consume one unit of beta.
ThresholdGrid approximant_two_dim(const Net& s, const Net& d, int alpha, int beta, Bounds b);

// Least ordinal below w^2 at which (sp, dp) drops out of the approximants, or inf.
// The Spoiler side must have finitely many reachable configurations with counters
// at most `spoiler_bound`; otherwise RankInapplicable is thrown.
Ordinal2 rank_solver(const Net& s, const Net& d, Configuration sp, Configuration dp, int beta_budget,
                     int spoiler_bound);

struct SaturationReport {
    bool rows_equal = false;  // row m=cap equals row m=cap-1
    bool cols_equal = false;  // no threshold equals cap
    bool saturated() const { return rows_equal && cols_equal; }
    std::string str() const;
};

std::pair<ThresholdGrid, SaturationReport> capped_gfp(const Net& s, const Net& d, int cap);

struct Certificate {
    bool accepted = false;
    std::string reason;
};

Certificate certify_simulation(const Net& s, const Net& d, const ThresholdGrid& grid, int cap);

struct Budgets {
    int alpha_max = 64;
    int cap = 64;
};

// Strong simulation of an ocn or fs Spoiler by an ocn/omega/fs Duplicator.
Verdict strong_sim_check(const Net& s, Configuration sp, const Net& d, Configuration dp, Budgets b);
// Weak simulation between two ocns via the reduction to strong simulation.
Verdict weak_sim_check(const Net& m, Configuration pm, const Net& n, Configuration qn, Budgets b);

// Exhaustive minimax over alpha rounds. OMEGA answers are enumerated up to
// enum_cap plus one value large enough to outlast the remaining rounds. With
// `weak`, Duplicator answers with weak steps explored up to counter
// max(enum_cap, n + 3|Q|+2) from its current counter n.
bool brute_force_game(const Net& s, const Net& d, Configuration sp, Configuration dp, int alpha, int enum_cap,
                      bool weak = false);

// Throws std::invalid_argument when (sp, dp) survives alpha rounds.
WitnessPlay extract_witness(const Net& s, const Net& d, Configuration sp, Configuration dp, int alpha);
// Replays a play through `successors` and checks that Spoiler's last move is unanswerable.
bool replay_witness(const Net& s, const Net& d, const WitnessPlay& play);

}  // namespace ocnwb
