#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ocnwb {

// Delta value standing for an unbounded increase (the counter jumps to any larger value).
inline constexpr int OMEGA = std::numeric_limits<int>::max();

inline constexpr std::string_view TAU = "tau";

inline bool is_silent(std::string_view label) { return label == TAU; }

enum class NetKind { ocn, oca, omega, gomega, fs, wfa };

std::string_view kind_name(NetKind k);
NetKind kind_from_name(std::string_view s);  // throws std::invalid_argument

// One transition. `guard` is only meaningful for gomega nets, `delta` holds the
// reward for wfa nets and is 0 for fs nets.
struct Transition {
    int src = 0;
    std::string label;
    int guard = 0;
    int delta = 0;
    int dst = 0;

    bool operator==(const Transition&) const = default;
};

class Net {
public:
    NetKind kind = NetKind::ocn;
    std::string name;
    std::vector<Transition> trans;
    std::vector<Transition> ztrans;  // oca zero tests
    int init = -1;                   // wfa initial state

    Net() = default;
    Net(NetKind k, std::string n) : kind(k), name(std::move(n)) {}

    const std::vector<std::string>& states() const { return states_; }
    std::size_t num_states() const { return states_.size(); }
    const std::string& state_name(int i) const { return states_.at(static_cast<std::size_t>(i)); }

    // Returns the index of an existing state of that name or appends a new one.
    int add_state(const std::string& s);
    int find_state(std::string_view s) const;  // -1 when absent
    int state(std::string_view s) const;       // throws UnknownState

    void add(int src, std::string label, int delta, int dst, int guard = 0);
    void add(const std::string& src, std::string label, int delta, const std::string& dst, int guard = 0);
    void add_zero(const std::string& src, std::string label, int delta, const std::string& dst);

    // Labels in first-use order over trans then ztrans.
    std::vector<std::string> actions() const;
    bool has_omega() const;

    bool operator==(const Net& o) const {
        return kind == o.kind && name == o.name && states_ == o.states_ && trans == o.trans &&
               ztrans == o.ztrans && init == o.init;
    }

private:
    std::vector<std::string> states_;
    std::unordered_map<std::string, int> index_;
};

class UnknownState : public std::runtime_error {
public:
    explicit UnknownState(const std::string& s) : std::runtime_error("unknown state '" + s + "'") {}
};

struct Configuration {
    int state = 0;
    int counter = 0;
    bool operator==(const Configuration&) const = default;
};

// For finite steps `counter` is the target value. For OMEGA steps the target is
// symbolic: any value strictly greater than `counter`.
struct Successor {
    std::string label;
    int state = 0;
    int counter = 0;
    bool omega = false;
    int trans_index = 0;  // index into trans, or into ztrans when `zero` is set
    bool zero = false;
};

struct Step {
    std::string label;
    Configuration to;
    int trans_index = 0;
    bool zero = false;
};

std::vector<std::string> validate(const Net& net);

std::vector<Successor> successors(const Net& net, Configuration c);
// Concretizes OMEGA targets to every value in (c.counter, cap]. Throws if cap < c.counter.
std::vector<Step> bounded_successors(const Net& net, Configuration c, int cap);

using PathRec = std::vector<Transition>;

bool path_well_formed(const PathRec& p);
int path_effect(const PathRec& p);      // OMEGA if any step is OMEGA
int path_guard(const PathRec& p);       // throws std::invalid_argument on OMEGA
std::vector<std::string> path_obs(const PathRec& p);

// Saturating addition treating OMEGA as absorbing.
inline int add_delta(int a, int b) { return (a == OMEGA || b == OMEGA) ? OMEGA : a + b; }

}  // namespace ocnwb
