#pragma once

#include <string>
#include <vector>

#include "ocnwb/net.hpp"

namespace ocnwb {

// Fresh labels introduced by the constructions. They contain '@' and therefore
// cannot clash with user labels.
inline constexpr const char* LABEL_B = "@b";
inline constexpr const char* LABEL_E = "@e";
inline constexpr const char* LABEL_F = "@f";
std::string pair_label(const std::string& p, const std::string& q);

struct DirectPathSet {
    int source = 0;
    int target = 0;
    std::vector<PathRec> paths;
};

DirectPathSet direct_paths(const Net& n, int s, int t, bool silent_only);

// Guarded omega-net over the states of `n`. With `silent_loops` every state gets
// an extra (p, tau, 0, 0, p) transition.
Net build_guarded_omega(const Net& n, bool silent_loops);
// Adds the silent loops exactly when `n` uses tau.
Net build_guarded_omega(const Net& n);

struct ReductionOutput {
    Net spoiler;      // M'
    Net duplicator;   // N' (omega-net)
    int k = 1;        // rounds per original round
    int gamma = 0;    // largest guard of G
    int delta = 0;    // largest absolute finite effect of G
    std::vector<int> spoiler_map;     // state of M  -> state of M'
    std::vector<int> duplicator_map;  // state of G  -> state of N'
    std::vector<std::string> header() const;
};

int round_factor(const Net& g, int* gamma = nullptr, int* delta = nullptr);
ReductionOutput normalize(const Net& m, const Net& g);
ReductionOutput weak_to_strong(const Net& m, const Net& n);

struct TestGadget {
    Net s;
    Net t;
    int s0 = 0;
    int t0 = 0;
};

// `mval` is a natural number or OMEGA.
TestGadget build_test_gadget(int mval, const std::string& p, const std::string& q);

struct MTable {
    int level = 0;
    std::vector<std::string> spoiler_states;
    std::vector<std::string> dup_states;
    std::vector<std::vector<int>> entries;  // [p][q], OMEGA for no bound
    std::vector<std::string> diagnostics;
    int at(int p, int q) const { return entries.at(p).at(q); }
};

struct StepNets {
    Net spoiler;     // N_S
    Net duplicator;  // N_D
};

StepNets build_step_nets(const Net& n, const Net& nprime, const MTable& mtab);
MTable compute_m_table(const Net& n, const Net& nprime, int k, int search_bound);

}  // namespace ocnwb
