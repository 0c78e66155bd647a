#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ocnwb/finite_compare.hpp"
#include "ocnwb/games.hpp"
#include "ocnwb/reduction.hpp"
#include "ocnwb/text_format.hpp"
#include "ocnwb/traces.hpp"

namespace py = pybind11;
using namespace ocnwb;

namespace {

Configuration conf(const Net& n, const std::string& state, int counter) { return {n.state(state), counter}; }

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["verdict"] = verdict_name(v.kind);
    d["rank"] = v.rank ? py::cast(v.rank->str()) : py::none();
    py::dict info;
    for (const auto& [k, val] : v.info) info[py::str(k)] = val;
    d["info"] = info;
    d["witness"] = v.witness ? py::cast(v.witness->report()) : py::none();
    d["report"] = v.report();
    return d;
}

std::string inclusion_name(InclusionKind k) {
    switch (k) {
        case InclusionKind::included: return "included";
        case InclusionKind::counterexample: return "counterexample";
        case InclusionKind::budget_exceeded: return "budget_exceeded";
    }
    return "?";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "One-counter nets: weak simulation games and reductions";
    m.attr("OMEGA") = OMEGA;

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<UnknownState>(m, "UnknownState", PyExc_KeyError);
    py::register_exception<RankInapplicable>(m, "RankInapplicable", PyExc_RuntimeError);

    py::class_<Net>(m, "Net")
        .def_static(
            "parse", [](const std::string& text, bool allow_reserved) { return parse_net(text, {allow_reserved}); },
            py::arg("text"), py::arg("allow_reserved") = false)
        .def_static(
            "load", [](const std::string& path, bool allow_reserved) { return load_net(path, {allow_reserved}); },
            py::arg("path"), py::arg("allow_reserved") = false)
        .def_property_readonly("kind", [](const Net& n) { return std::string(kind_name(n.kind)); })
        .def_readonly("name", &Net::name)
        .def_property_readonly("states", &Net::states)
        .def_property_readonly("actions", &Net::actions)
        .def_property_readonly("has_omega", &Net::has_omega)
        .def("format", [](const Net& n) { return format_net(n); })
        .def("validate", [](const Net& n) { return validate(n); })
        .def("__eq__", [](const Net& a, const Net& b) { return a == b; })
        .def("__repr__", [](const Net& n) {
            return "<Net " + std::string(kind_name(n.kind)) + " " + n.name + " states=" +
                   std::to_string(n.num_states()) + ">";
        });

    m.def("parse_nets", [](const std::string& text, bool allow_reserved) { return parse_nets(text, {allow_reserved}); },
          py::arg("text"), py::arg("allow_reserved") = false);

    m.def(
        "successors",
        [](const Net& n, const std::string& p, int c) {
            std::vector<std::tuple<std::string, std::string, int>> out;
            for (const auto& s : successors(n, conf(n, p, c)))
                out.emplace_back(s.label, n.state_name(s.state), s.omega ? OMEGA : s.counter);
            return out;
        },
        py::arg("net"), py::arg("state"), py::arg("counter"));

    m.def(
        "weak_sim",
        [](const Net& a, const std::string& p, int m, const Net& b, const std::string& q, int n, int alpha_max,
           int cap) { return verdict_dict(weak_sim_check(a, conf(a, p, m), b, conf(b, q, n), {alpha_max, cap})); },
        py::arg("m"), py::arg("p"), py::arg("pm"), py::arg("n"), py::arg("q"), py::arg("qn"), py::arg("alpha_max") = 64,
        py::arg("cap") = 64);

    m.def(
        "strong_sim",
        [](const Net& a, const std::string& p, int m, const Net& b, const std::string& q, int n, int alpha_max,
           int cap) { return verdict_dict(strong_sim_check(a, conf(a, p, m), b, conf(b, q, n), {alpha_max, cap})); },
        py::arg("s"), py::arg("p"), py::arg("m"), py::arg("d"), py::arg("q"), py::arg("n"), py::arg("alpha_max") = 64,
        py::arg("cap") = 64);

    m.def(
        "rank",
        [](const Net& a, const std::string& p, int m, const Net& b, const std::string& q, int n, int beta,
           int spoiler_bound) {
            return rank_solver(a, b, conf(a, p, m), conf(b, q, n), beta, spoiler_bound).str();
        },
        py::arg("s"), py::arg("p"), py::arg("m"), py::arg("d"), py::arg("q"), py::arg("n"),
        py::arg("beta") = BETA_INFINITE, py::arg("spoiler_bound") = 64);

    m.def(
        "approximant",
        [](const Net& a, const Net& b, int alpha, int m_max, int n_max, int beta) {
            Bounds bd{m_max, n_max};
            auto g = beta == BETA_INFINITE ? approximant_finite(a, b, alpha, bd)
                                           : approximant_two_dim(a, b, alpha, beta, bd);
            return g.report();
        },
        py::arg("s"), py::arg("d"), py::arg("alpha"), py::arg("m_max"), py::arg("n_max"),
        py::arg("beta") = BETA_INFINITE);

    m.def(
        "brute_force_game",
        [](const Net& a, const std::string& p, int m, const Net& b, const std::string& q, int n, int alpha,
           int enum_cap, bool weak) { return brute_force_game(a, b, conf(a, p, m), conf(b, q, n), alpha, enum_cap, weak); },
        py::arg("s"), py::arg("p"), py::arg("m"), py::arg("d"), py::arg("q"), py::arg("n"), py::arg("alpha"),
        py::arg("enum_cap") = 6, py::arg("weak") = false);

    m.def("guarded_omega", [](const Net& n) { return build_guarded_omega(n); });
    m.def(
        "weak_to_strong",
        [](const Net& a, const Net& b) {
            auto r = weak_to_strong(a, b);
            return py::make_tuple(r.spoiler, r.duplicator, r.k);
        },
        "(M', N', k) for the weak game between two nets");

    m.def("weak_closure", &weak_closure);
    m.def("capped_net", &capped_net, py::arg("ocn"), py::arg("l"));
    m.def(
        "fs_weak_sim",
        [](const Net& a, const std::string& s, const Net& b, const std::string& t) {
            return fs_weak_sim(a, a.state(s), b, b.state(t));
        },
        py::arg("a"), py::arg("s"), py::arg("b"), py::arg("t"));
    m.def(
        "ocn_simulates_fs",
        [](const Net& ocn, const std::string& q, int n, const Net& fs, const std::string& p) {
            return ocn_simulates_fs(ocn, ocn.state(q), n, fs, fs.state(p));
        },
        py::arg("ocn"), py::arg("q"), py::arg("n"), py::arg("fs"), py::arg("p"));
    m.def(
        "fs_simulates_ocn",
        [](const Net& fs, const std::string& s, const Net& ocn, const std::string& p, int m) {
            return fs_simulates_ocn(fs, fs.state(s), ocn, ocn.state(p), m);
        },
        py::arg("fs"), py::arg("s"), py::arg("ocn"), py::arg("p"), py::arg("m"));

    m.def(
        "wfa_value",
        [](const Net& wfa, const std::vector<std::string>& w) -> py::object {
            auto v = wfa_value(wfa, w);
            return v ? py::cast(*v) : py::none();
        },
        py::arg("wfa"), py::arg("word"));
    m.def(
        "wfa_encode",
        [](const Net& wfa) {
            auto e = wfa_to_ocn(wfa);
            return py::make_tuple(e.net, e.net.state_name(e.start.state), e.d_label);
        },
        "(net, start state, d label); the start counter is 0");
    m.def(
        "traces",
        [](const Net& n, const std::string& p, int c, int max_len) {
            py::set out;
            for (const auto& w : traces_bounded(n, conf(n, p, c), max_len).words) out.add(py::tuple(py::cast(w)));
            return out;
        },
        py::arg("net"), py::arg("state"), py::arg("counter"), py::arg("max_len"));
    m.def(
        "trace_inclusion",
        [](const Net& a, const std::string& p, int m, const Net& b, const std::string& q, bool weak,
           long long max_nodes) {
            auto v = oca_subset_fs(a, conf(a, p, m), b, b.state(q), weak, max_nodes);
            return py::make_tuple(inclusion_name(v.kind), v.word);
        },
        py::arg("a"), py::arg("p"), py::arg("m"), py::arg("b"), py::arg("q"), py::arg("weak") = false,
        py::arg("max_nodes") = 0);
}
