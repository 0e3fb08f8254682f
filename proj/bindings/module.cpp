#include "tjurina/catalog.hpp"
#include "tjurina/errors.hpp"
#include "tjurina/family.hpp"
#include "tjurina/reporting.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tjurina;

namespace {

RankMode mode_from(const std::string& s) {
    if (s == "exact") return RankMode::Exact;
    if (s == "modular") return RankMode::Modular;
    if (s == "auto") return RankMode::Auto;
    throw std::invalid_argument("mode must be auto, exact, or modular");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact Milnor/Tjurina invariants and join verification";

    py::register_exception<NonIsolatedError>(m, "NonIsolatedError");
    py::register_exception<CheckFailedError>(m, "CheckFailedError");

    m.def(
        "invariants_json",
        [](const std::string& text, const std::vector<std::string>& vars) {
            Germ g = Germ::parse(text, make_vars(vars));
            return invariant_report_json(invariant_report(g), g.poly().to_string(),
                                         g.vars()->names());
        },
        py::arg("text"), py::arg("vars"));

    m.def(
        "join_json",
        [](const std::string& text1, const std::vector<std::string>& vars1,
           const std::string& text2, const std::vector<std::string>& vars2,
           const std::string& mode, bool oracle) {
            JoinOptions o;
            o.mode = mode_from(mode);
            o.fullring_oracle = oracle;
            Germ a = Germ::parse(text1, make_vars(vars1));
            Germ b = Germ::parse(text2, make_vars(vars2));
            return join_report_json(verify_theorem(a, b, o));
        },
        py::arg("text1"), py::arg("vars1"), py::arg("text2"), py::arg("vars2"),
        py::arg("mode") = "auto", py::arg("oracle") = false);

    m.def(
        "family_scan_json",
        [](std::size_t n, std::size_t max_terms) {
            return family_scan_json(family_scan(n, max_terms));
        },
        py::arg("n"), py::arg("max_terms") = 1);

    m.def("catalog_text", [] { return bundled_catalog_text(); });
}
