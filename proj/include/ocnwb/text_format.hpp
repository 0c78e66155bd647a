#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ocnwb/net.hpp"

namespace ocnwb {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct ParseOptions {
    // Generated nets use names containing '@'. User input must not.
    bool allow_reserved = false;
};

bool is_reserved_name(std::string_view s);

// A document may hold several nets, each introduced by a `net` line.
std::vector<Net> parse_nets(std::string_view text, ParseOptions opt = {});
// Exactly one net.
Net parse_net(std::string_view text, ParseOptions opt = {});
// Reads a file. `path:name` selects one net of a multi-net file.
Net load_net(const std::string& path_spec, ParseOptions opt = {});

std::string format_delta(int d);
// `header` lines are emitted as '#' comments before the net line.
std::string format_net(const Net& net, const std::vector<std::string>& header = {});

}  // namespace ocnwb
