#include "ocnwb/text_format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ocnwb {

bool is_reserved_name(std::string_view s) { return s.find('@') != std::string_view::npos; }

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

int parse_int(const std::string& tok, int line, const char* what) {
    int v = 0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    if (!tok.empty() && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || b == e) throw ParseError(line, std::string("bad ") + what + " '" + tok + "'");
    return v;
}

int parse_delta(const std::string& tok, int line) { return tok == "w" ? OMEGA : parse_int(tok, line, "delta"); }

class Parser {
public:
    Parser(ParseOptions opt) : opt_(opt) {}

    std::vector<Net> run(std::string_view text) {
        int lineno = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            if (nl == std::string_view::npos) nl = text.size();
            std::string_view line = text.substr(pos, nl - pos);
            ++lineno;
            if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
            auto toks = split_ws(line);
            if (!toks.empty()) directive(toks, lineno);
            pos = nl + 1;
        }
        finish(lineno);
        return std::move(nets_);
    }

private:
    ParseOptions opt_;
    std::vector<Net> nets_;
    bool open_ = false;
    int net_line_ = 0;

    Net& cur(int line) {
        if (!open_) throw ParseError(line, "directive before 'net'");
        return nets_.back();
    }

    void name_ok(const std::string& s, int line) {
        if (!opt_.allow_reserved && is_reserved_name(s)) throw ParseError(line, "reserved name '" + s + "'");
    }

    int known(Net& n, const std::string& s, int line) {
        int i = n.find_state(s);
        if (i < 0) throw ParseError(line, "unknown state '" + s + "'");
        return i;
    }

    void arity(const std::vector<std::string>& t, std::size_t k, int line) {
        if (t.size() != k) throw ParseError(line, "'" + t[0] + "' expects " + std::to_string(k - 1) + " arguments");
    }

    void finish(int line) {
        if (!open_) return;
        auto diags = validate(nets_.back());
        if (!diags.empty()) throw ParseError(net_line_, "net '" + nets_.back().name + "': " + diags.front());
        (void)line;
    }

    void directive(const std::vector<std::string>& t, int line) {
        const std::string& d = t[0];
        if (d == "net") {
            arity(t, 3, line);
            finish(line);
            NetKind k;
            try {
                k = kind_from_name(t[1]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(line, e.what());
            }
            name_ok(t[2], line);
            nets_.emplace_back(k, t[2]);
            open_ = true;
            net_line_ = line;
            return;
        }
        Net& n = cur(line);
        if (d == "states") {
            for (std::size_t i = 1; i < t.size(); ++i) {
                name_ok(t[i], line);
                if (n.find_state(t[i]) >= 0) throw ParseError(line, "duplicate state '" + t[i] + "'");
                n.add_state(t[i]);
            }
        } else if (d == "trans") {
            if (n.kind == NetKind::gomega) throw ParseError(line, "gomega nets use 'gtrans'");
            if (n.kind == NetKind::fs) {
                arity(t, 4, line);
                name_ok(t[2], line);
                n.add(known(n, t[1], line), t[2], 0, known(n, t[3], line));
                return;
            }
            arity(t, 5, line);
            name_ok(t[2], line);
            int delta = n.kind == NetKind::wfa ? parse_int(t[3], line, "reward") : parse_delta(t[3], line);
            if (delta == OMEGA && n.kind != NetKind::omega) throw ParseError(line, "OMEGA delta not allowed here");
            n.add(known(n, t[1], line), t[2], delta, known(n, t[4], line));
        } else if (d == "ztrans") {
            if (n.kind != NetKind::oca) throw ParseError(line, "'ztrans' only allowed in oca nets");
            arity(t, 5, line);
            name_ok(t[2], line);
            int delta = parse_int(t[3], line, "delta");
            if (delta != 0 && delta != 1) throw ParseError(line, "delta out of range");
            int s = known(n, t[1], line), q = known(n, t[4], line);
            n.ztrans.push_back(Transition{s, t[2], 0, delta, q});
        } else if (d == "gtrans") {
            if (n.kind != NetKind::gomega) throw ParseError(line, "'gtrans' only allowed in gomega nets");
            arity(t, 6, line);
            name_ok(t[2], line);
            int guard = parse_int(t[3], line, "guard");
            int delta = parse_delta(t[4], line);
            n.add(known(n, t[1], line), t[2], delta, known(n, t[5], line), guard);
        } else if (d == "init") {
            if (n.kind != NetKind::wfa) throw ParseError(line, "'init' only allowed in wfa nets");
            arity(t, 2, line);
            if (n.init != -1) throw ParseError(line, "duplicate 'init'");
            n.init = known(n, t[1], line);
        } else {
            throw ParseError(line, "unknown directive '" + d + "'");
        }
    }
};

}  // namespace

std::vector<Net> parse_nets(std::string_view text, ParseOptions opt) { return Parser(opt).run(text); }

Net parse_net(std::string_view text, ParseOptions opt) {
    auto nets = parse_nets(text, opt);
    if (nets.size() != 1) throw ParseError(0, "expected exactly one net, found " + std::to_string(nets.size()));
    return std::move(nets.front());
}

Net load_net(const std::string& path_spec, ParseOptions opt) {
    std::string path = path_spec, select;
    if (auto c = path_spec.rfind(':'); c != std::string::npos && c > 0) {
        std::ifstream probe(path_spec);
        if (!probe) {
            path = path_spec.substr(0, c);
            select = path_spec.substr(c + 1);
        }
    }
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    auto nets = parse_nets(ss.str(), opt);
    if (select.empty()) {
        if (nets.size() != 1)
            throw ParseError(0, "'" + path + "' holds " + std::to_string(nets.size()) + " nets; use path:name");
        return std::move(nets.front());
    }
    for (auto& n : nets)
        if (n.name == select) return std::move(n);
    throw ParseError(0, "no net named '" + select + "' in '" + path + "'");
}

std::string format_delta(int d) { return d == OMEGA ? "w" : std::to_string(d); }

std::string format_net(const Net& net, const std::vector<std::string>& header) {
    std::ostringstream os;
    for (const auto& h : header) os << "# " << h << '\n';
    os << "net " << kind_name(net.kind) << ' ' << net.name << '\n';
    os << "states";
    for (const auto& s : net.states()) os << ' ' << s;
    os << '\n';
    for (const auto& t : net.trans) {
        const auto& src = net.state_name(t.src);
        const auto& dst = net.state_name(t.dst);
        if (net.kind == NetKind::gomega)
            os << "gtrans " << src << ' ' << t.label << ' ' << t.guard << ' ' << format_delta(t.delta) << ' ' << dst;
        else if (net.kind == NetKind::fs)
            os << "trans " << src << ' ' << t.label << ' ' << dst;
        else
            os << "trans " << src << ' ' << t.label << ' ' << format_delta(t.delta) << ' ' << dst;
        os << '\n';
    }
    for (const auto& t : net.ztrans)
        os << "ztrans " << net.state_name(t.src) << ' ' << t.label << ' ' << t.delta << ' ' << net.state_name(t.dst)
           << '\n';
    if (net.kind == NetKind::wfa && net.init >= 0) os << "init " << net.state_name(net.init) << '\n';
    return os.str();
}

}  // namespace ocnwb
