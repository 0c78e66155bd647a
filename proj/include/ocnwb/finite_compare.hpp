#pragma once

#include <string>
#include <vector>

#include "ocnwb/net.hpp"

namespace ocnwb {

// q -a-> q' in the result iff q =a=> q' in `fs`; tau edges are the reflexive
// transitive silent closure.
Net weak_closure(const Net& fs);

// The l-capped fs version of an ocn: states "q@n" for n in 0..l.
Net capped_net(const Net& ocn, int l);
std::string capped_state(const std::string& q, int n);

bool fs_weak_sim(const Net& fs1, int s, const Net& fs2, int t);

// Cap that suffices for an ocn with `ocn_states` states against an fs with `fs_states` states.
long long sufficient_cap(std::size_t ocn_states, std::size_t fs_states);

// p (fs) weakly simulated by qn (ocn). `cap` overrides the sufficient cap when >= 1.
bool ocn_simulates_fs(const Net& ocn, int q, int n, const Net& fs, int p, int cap = 0);

inline constexpr int TT_ABSENT = -1;
inline constexpr int TT_INFINITE = -2;

struct ThresholdTable {
    std::vector<std::string> ocn_states;
    std::vector<std::string> fs_states;
    int cutoff = 0;
    std::vector<std::vector<int>> t;  // [p][s]: sup{m : pm weakly simulated by s}
    bool member(int p, int m, int s) const {
        int v = t.at(p).at(s);
        return v == TT_INFINITE || m <= v;
    }
    std::string report() const;
};

ThresholdTable fs_ocn_table(const Net& fs, const Net& ocn);
// pm (ocn) weakly simulated by s (fs).
bool fs_simulates_ocn(const Net& fs, int s, const Net& ocn, int p, int m);

}  // namespace ocnwb
