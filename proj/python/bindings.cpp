#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aba/frontend.hpp"
#include "aba/lp_bridge.hpp"
#include "aba/semantics.hpp"
#include "aba/strategy.hpp"

namespace py = pybind11;
using namespace aba;

namespace {

std::vector<std::string> strings(const std::set<GroundAtom>& atoms) {
    std::vector<std::string> out;
    for (const auto& a : atoms) out.push_back(to_string(a));
    return out;
}

Mode mode_arg(const std::string& s) {
    auto m = mode_from_string(s);
    if (!m) throw py::value_error("mode must be 'credulous' or 'sceptical'");
    return *m;
}

SemanticsConfig semantics_arg(std::size_t budget) {
    SemanticsConfig c;
    c.assumption_budget = budget;
    return c;
}

}  // namespace

PYBIND11_MODULE(_aba, m) {
    m.doc() = "Assumption-based argumentation learning";

    auto error = py::register_exception<Error>(m, "AbaError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<ValidationError>(m, "ValidationError", error);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error);

    py::class_<Framework>(m, "Framework")
        .def(py::init<>())
        .def_static("parse", [](const std::string& text) { return parse_framework(text); }, py::arg("text"))
        .def_static(
            "load", [](const std::string& path) { return parse_framework(load_document(path).text); },
            py::arg("path"))
        .def("serialize", [](const Framework& fw) { return serialize(fw); })
        .def_property_readonly("rules",
                               [](const Framework& fw) {
                                   std::vector<std::string> out;
                                   for (const auto& r : fw.rules()) out.push_back(to_string(r));
                                   return out;
                               })
        .def_property_readonly("assumptions",
                               [](const Framework& fw) {
                                   std::vector<std::string> out;
                                   for (const auto& d : fw.assumptions()) out.push_back(to_string(d));
                                   return out;
                               })
        .def_property_readonly("universe", [](const Framework& fw) { return fw.universe(); })
        .def("__eq__", [](const Framework& a, const Framework& b) { return a.structurally_equal(b); })
        .def("__str__", [](const Framework& fw) { return serialize(fw); });

    m.def(
        "stable_extensions",
        [](const Framework& fw, std::size_t budget) {
            py::list out;
            for (const auto& e : stable_extensions(fw, semantics_arg(budget))) {
                py::dict d;
                d["assumptions"] = strings(e.assumptions);
                d["claims"] = strings(e.claims);
                out.append(d);
            }
            return out;
        },
        py::arg("framework"), py::arg("budget") = SemanticsConfig{}.assumption_budget);

    m.def(
        "entails",
        [](const Framework& fw, const std::string& atom, const std::string& mode, std::size_t budget) {
            return entails(fw, parse_ground_atom(atom), mode_arg(mode), semantics_arg(budget));
        },
        py::arg("framework"), py::arg("atom"), py::arg("mode") = "credulous",
        py::arg("budget") = SemanticsConfig{}.assumption_budget);

    m.def(
        "to_lp", [](const Framework& fw) { return to_text(to_logic_program(fw)); }, py::arg("framework"));

    m.def(
        "cross_check",
        [](const Framework& fw) {
            const CrossCheckReport r = cross_check(fw);
            py::dict d;
            d["match"] = r.match;
            d["extensions"] = r.extension_count;
            d["models"] = r.model_count;
            d["detail"] = r.detail;
            return d;
        },
        py::arg("framework"));

    m.def(
        "learn",
        [](const Framework& background, const std::string& examples, const std::string& mode, bool reuse,
           std::size_t max_iterations) {
            StrategyConfig config;
            config.mode = mode_arg(mode);
            config.allow_assumption_reuse = reuse;
            config.max_iterations = max_iterations;
            const LearnResult r = learn(LearningProblem{background, parse_examples(examples)}, config);
            py::dict d;
            d["framework"] = r.framework;
            d["status"] = std::string(to_string(r.status));
            d["message"] = r.message;
            d["goal_holds"] = r.goal_report.holds();
            d["trace"] = trace_to_json(r.trace, to_string(r.status));
            return d;
        },
        py::arg("background"), py::arg("examples"), py::arg("mode") = "credulous", py::arg("reuse") = false,
        py::arg("max_iterations") = StrategyConfig{}.max_iterations);

    m.def(
        "replay",
        [](const Framework& background, const std::string& trace_json) {
            return replay(background, trace_from_json(trace_json));
        },
        py::arg("background"), py::arg("trace"));
}
