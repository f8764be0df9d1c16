#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csolve/harness.hpp"

namespace py = pybind11;
using namespace csp;

namespace {

SearchReport solve_with_tokens(const Problem& p, const std::string& branching,
                               const std::string& voh, std::optional<double> e,
                               const std::string& secondary, const std::string& mode,
                               std::optional<double> timeout,
                               std::optional<std::int64_t> node_limit, bool record_trace) {
    NamedConfig nc = make_named_config(branching, voh, e, secondary, mode, timeout, node_limit);
    nc.config.record_trace = record_trace;
    return solve(p, nc.config);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "CSP solver with d-way, 2-way, restricted 2-way and adaptive branching";

    py::register_exception<ParseError>(m, "InstanceParseError");

    py::class_<Problem>(m, "Problem")
        .def_readonly("name", &Problem::name)
        .def_property_readonly("num_variables", &Problem::num_variables)
        .def_property_readonly("num_constraints", &Problem::num_constraints)
        .def_property_readonly("variable_names",
                               [](const Problem& p) {
                                   std::vector<std::string> names;
                                   for (const auto& v : p.variables) names.push_back(v.name);
                                   return names;
                               })
        .def("__eq__", [](const Problem& a, const Problem& b) { return a == b; })
        .def("__repr__", [](const Problem& p) {
            return "<Problem '" + p.name + "' vars=" + std::to_string(p.num_variables()) +
                   " cons=" + std::to_string(p.num_constraints()) + ">";
        });

    py::class_<Decision>(m, "Decision")
        .def_readonly("is_assign", &Decision::is_assign)
        .def_readonly("var", &Decision::var)
        .def_readonly("value", &Decision::value)
        .def_readonly("depth", &Decision::depth);

    py::class_<SearchReport>(m, "SearchReport")
        .def_property_readonly("verdict",
                               [](const SearchReport& r) { return verdict_name(r.verdict); })
        .def_readonly("solutions", &SearchReport::solutions)
        .def_readonly("solution_count", &SearchReport::solution_count)
        .def_readonly("nodes", &SearchReport::nodes)
        .def_readonly("vc", &SearchReport::vc)
        .def_readonly("vc_blocked", &SearchReport::vc_blocked)
        .def_readonly("dis_samples", &SearchReport::dis_samples)
        .def_readonly("dwo_count", &SearchReport::dwo_count)
        .def_readonly("deletion_event_count", &SearchReport::deletion_event_count)
        .def_readonly("wall_time_ms", &SearchReport::wall_time_ms)
        .def_readonly("trace", &SearchReport::trace)
        .def("__repr__", [](const SearchReport& r) {
            return std::string("<SearchReport ") + verdict_name(r.verdict) +
                   " nodes=" + std::to_string(r.nodes) + " vc=" + std::to_string(r.vc) + ">";
        });

    py::class_<TTestResult>(m, "TTestResult")
        .def_readonly("n_pairs", &TTestResult::n_pairs)
        .def_readonly("mean", &TTestResult::mean)
        .def_readonly("sd", &TTestResult::sd)
        .def_readonly("t_value", &TTestResult::t_value)
        .def_readonly("ci_low", &TTestResult::ci_low)
        .def_readonly("ci_high", &TTestResult::ci_high);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("e", &SweepPoint::e)
        .def_readonly("nodes", &SweepPoint::nodes)
        .def_readonly("vc", &SweepPoint::vc)
        .def_readonly("time_ms", &SweepPoint::time_ms);

    m.def(
        "parse_instance",
        [](const std::string& text, const std::string& name) {
            ParseResult r = parse_instance(text, name);
            return py::make_tuple(std::move(r.problem), std::move(r.warnings));
        },
        py::arg("text"), py::arg("name") = "",
        "Parse instance text; returns (problem, warnings).");
    m.def("render_instance", &render_instance, py::arg("problem"));
    m.def("generate_rb", &generate_rb, py::arg("n"), py::arg("alpha"), py::arg("r"), py::arg("p"),
          py::arg("seed"));
    m.def("generate_nqueens", &generate_nqueens, py::arg("n"));
    m.def("brute_force_count", &brute_force_count, py::arg("problem"),
          py::arg("cap") = 10'000'000);
    m.def("solve", &solve_with_tokens, py::arg("problem"), py::arg("branching") = "2way",
          py::arg("voh") = "wdeg", py::arg("e") = std::nullopt, py::arg("secondary") = "wdeg",
          py::arg("mode") = "first", py::arg("timeout") = std::nullopt,
          py::arg("node_limit") = std::nullopt, py::arg("record_trace") = false);
    m.def(
        "e_sweep",
        [](const Problem& p, const std::string& voh, double e_from, double e_to, double step) {
            auto parsed = parse_voh_token(voh);
            if (!parsed) throw std::invalid_argument("unknown voh '" + voh + "'");
            return e_sweep(p, *parsed, e_from, e_to, step);
        },
        py::arg("problem"), py::arg("voh"), py::arg("e_from"), py::arg("e_to"), py::arg("step"));
    m.def(
        "paired_t_test",
        [](const std::vector<double>& a, const std::vector<double>& b) {
            return paired_t_test(a, b);
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "spearman_trend",
        [](const std::vector<double>& xs, const std::vector<double>& ys) {
            return spearman_trend(xs, ys);
        },
        py::arg("xs"), py::arg("ys"));
}
