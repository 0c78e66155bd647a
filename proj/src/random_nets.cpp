#include "ocnwb/random_nets.hpp"

#include <algorithm>

namespace ocnwb {

namespace {

int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

Net random_net(std::mt19937& rng, NetKind kind, const RandomShape& shape, const std::string& name) {
    if (shape.states < 1) throw std::invalid_argument("need at least one state");
    Net n(kind, name);
    for (int i = 0; i < shape.states; ++i) n.add_state("s" + std::to_string(i));
    std::vector<std::string> labels = shape.labels;
    if (shape.silent) labels.emplace_back(TAU);
    auto delta = [&]() -> int {
        switch (kind) {
            case NetKind::fs: return 0;
            case NetKind::wfa: return pick(rng, 0, shape.max_reward);
            case NetKind::omega: return pick(rng, 0, 5) == 0 ? OMEGA : pick(rng, -1, 1);
            default: return pick(rng, -1, 1);
        }
    };
    for (int i = 0; i < shape.transitions; ++i) {
        Transition t{pick(rng, 0, shape.states - 1), labels[pick(rng, 0, static_cast<int>(labels.size()) - 1)], 0,
                     delta(), pick(rng, 0, shape.states - 1)};
        if (std::find(n.trans.begin(), n.trans.end(), t) != n.trans.end()) continue;
        n.trans.push_back(t);
    }
    if (kind == NetKind::oca)
        for (int i = 0; i < shape.zero_tests; ++i) {
            Transition t{pick(rng, 0, shape.states - 1), labels[pick(rng, 0, static_cast<int>(labels.size()) - 1)], 0,
                         pick(rng, 0, 1), pick(rng, 0, shape.states - 1)};
            if (std::find(n.ztrans.begin(), n.ztrans.end(), t) == n.ztrans.end()) n.ztrans.push_back(t);
        }
    if (kind == NetKind::wfa) n.init = 0;
    return n;
}

}  // namespace ocnwb
