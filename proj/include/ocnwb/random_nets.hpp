#pragma once

#include <random>
#include <vector>

#include "ocnwb/net.hpp"

namespace ocnwb {

struct RandomShape {
    int states = 3;
    int transitions = 5;
    std::vector<std::string> labels{"a", "b"};
    bool silent = false;  // allow tau labels
    int zero_tests = 0;   // oca only
    int max_reward = 3;   // wfa only
};

// Deterministic for a given engine state. Duplicate transitions are skipped,
// so the result may have fewer transitions than requested.
Net random_net(std::mt19937& rng, NetKind kind, const RandomShape& shape, const std::string& name = "R");

}  // namespace ocnwb
