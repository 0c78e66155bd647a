#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ocnwb/net.hpp"

namespace ocnwb {

using Word = std::vector<std::string>;

std::string word_str(const Word& w);  // space separated, "" for the empty word

// Largest reward sum over runs of `w` from the initial state; nullopt when there is no run.
std::optional<long long> wfa_value(const Net& wfa, const Word& w);

struct WfaEncoding {
    Net net;  // gomega net with guard 0 everywhere, deltas equal to rewards
    Configuration start;
    std::string d_label;
    int d_state = 0;
};

inline constexpr const char* ENCODING_SINK = "@w/D";

// `d_label` forces the name of the draining action; empty picks "d" or a fresh variant.
WfaEncoding wfa_to_ocn(const Net& wfa, const std::string& d_label = "");

struct TraceSet {
    int max_len = 0;
    std::set<Word> words;
    bool contains(const Word& w) const { return words.count(w) != 0; }
};

// All traces of length at most max_len, tau counted as an ordinary symbol.
TraceSet traces_bounded(const Net& net, Configuration c, int max_len);

enum class InclusionKind { included, counterexample, budget_exceeded };

struct InclusionVerdict {
    InclusionKind kind = InclusionKind::included;
    long long bound = 0;
    Word word;
    long long explored = 0;
    std::string report() const;
};

long long inclusion_bound(int m, std::size_t oca_states, std::size_t fs_states);

// Traces of pm (ocn or oca) against traces of q (fs). With `weak`, tau steps of
// A are invisible and B is weak-closed. `max_nodes` > 0 caps the search.
InclusionVerdict oca_subset_fs(const Net& a, Configuration pm, const Net& b, int q, bool weak,
                               long long max_nodes = 0);

// Replays `w` on both sides: true iff it is a trace of pm but not of q.
bool separates(const Net& a, Configuration pm, const Net& b, int q, const Word& w, bool weak);

inline constexpr long long UNREACHABLE = -1;
long long shortest_reach(const Net& a, Configuration pm, int target);
long long reach_bound(int m, std::size_t states);

}  // namespace ocnwb
