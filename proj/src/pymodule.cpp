#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "flagforge/betti.hpp"
#include "flagforge/gallery.hpp"
#include "flagforge/io.hpp"

namespace py = pybind11;
using namespace flagforge;

namespace {

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail("ParseError", e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2); }

CompleteIntersection ci_from(const std::vector<int>& degrees, std::size_t nvars,
                             std::uint32_t p) {
    return make_ci_degrees(FieldSpec{p}, nvars, degrees);
}

} // namespace

PYBIND11_MODULE(_flagforge, m) {
    m.doc() = "exact free flags and graded differential modules over polynomial rings";

    py::register_exception<Error>(m, "FlagforgeError");

    m.def(
        "check",
        [](const std::string& text) -> std::string {
            Json j = parse_text(text);
            if (j.contains("maps")) {
                complex_from_json(j);
                return "complex";
            }
            if (j.contains("matrix")) {
                dm_from_json(j);
                return "differential-module";
            }
            if (j.contains("gens") || j.contains("degrees")) {
                ci_from_json(j);
                return "complete-intersection";
            }
            fail("ParseError", "unrecognized input shape");
        },
        py::arg("json_text"), "Validate a JSON payload and return its kind.");

    m.def(
        "fold",
        [](const std::string& text, int degree) {
            return dump(dm_to_json(fold(complex_from_json(parse_text(text)), degree)));
        },
        py::arg("complex_json"), py::arg("degree"),
        "Collapse a complex to a degree-a differential module, as JSON.");

    m.def(
        "deform",
        [](const std::string& text, int degree) {
            FreeComplex C = complex_from_json(parse_text(text));
            LiftState s(C, degree);
            int target = std::max<int>(1, static_cast<int>(C.length()));
            while (s.stage() < target) {
                LiftResult res = lift(s);
                if (std::holds_alternative<Obstructed>(res)) {
                    const Obstructed& ob = std::get<Obstructed>(res);
                    return dump(Json{{"obstructed", true},
                                     {"stage", ob.stage},
                                     {"internal_degree", ob.internal_degree},
                                     {"certificate", ob.certificate}});
                }
                s = std::get<LiftState>(std::move(res));
            }
            return dump(dm_to_json(assemble(s)));
        },
        py::arg("complex_json"), py::arg("degree"),
        "Canonical stage-by-stage lift; returns the flag or the obstruction, as JSON.");

    m.def(
        "enumerate_flags",
        [](const std::string& text, int degree, unsigned long long budget) {
            FreeComplex C = complex_from_json(parse_text(text));
            std::vector<std::pair<std::string, std::string>> out;
            for (const FlagClass& cls : enumerate_flags(C, degree, budget))
                out.emplace_back(cls.multiplicity.get_str(),
                                 dump(dm_to_json(assemble(cls.state))));
            return out;
        },
        py::arg("complex_json"), py::arg("degree"), py::arg("budget") = 1000000ULL,
        "Stage-wise flag classes over a finite field as (multiplicity, flag) pairs.");

    m.def(
        "minimize",
        [](const std::string& text) {
            auto [M, betti] = minimize(dm_from_json(parse_text(text)));
            return std::make_pair(dump(dm_to_json(M)), betti.total());
        },
        py::arg("dm_json"), "Strip scalar units; returns (module JSON, total Betti).");

    m.def(
        "homology",
        [](const std::string& text, std::optional<std::pair<int, int>> window) {
            DifferentialModule D = dm_from_json(parse_text(text));
            auto [j0, j1] = window ? *window : default_window(D);
            return homology_hilbert(D, j0, j1);
        },
        py::arg("dm_json"), py::arg("window") = std::nullopt,
        "Homology Hilbert function over the window (defaults to the module's own).");

    m.def(
        "dim_bounds",
        [](const std::string& text, int degree) {
            return dim_bounds(complex_from_json(parse_text(text)), degree);
        },
        py::arg("complex_json"), py::arg("degree"),
        "Bounds on the dimension of the space of degree-a flags.");

    m.def(
        "rigidity_window",
        [](const std::vector<int>& degrees, std::size_t nvars, std::uint32_t p) {
            return rigidity_window(ci_from(degrees, nvars, p));
        },
        py::arg("degrees"), py::arg("nvars"), py::arg("p") = 0,
        "Exact non-rigid degree interval of the pure power quotient.");

    m.def(
        "is_a_rigid",
        [](const std::vector<int>& degrees, std::size_t nvars, int a, std::uint32_t p) {
            return is_a_rigid(ci_from(degrees, nvars, p), a).rigid;
        },
        py::arg("degrees"), py::arg("nvars"), py::arg("a"), py::arg("p") = 0,
        "Whether every degree-a flag on the quotient's resolution is trivial.");

    m.def(
        "ext_dim",
        [](const std::vector<int>& degrees, std::size_t nvars, int i, int j,
           std::uint32_t p) { return ci_ext_dim(ci_from(degrees, nvars, p), i, j); },
        py::arg("degrees"), py::arg("nvars"), py::arg("i"), py::arg("j"), py::arg("p") = 0,
        "dim of Ext^i in internal degree j for the pure power quotient.");

    m.def(
        "hilbert",
        [](const std::vector<int>& degrees, std::size_t nvars, int jmax, std::uint32_t p) {
            return hilbert_coeffs(ci_from(degrees, nvars, p), jmax);
        },
        py::arg("degrees"), py::arg("nvars"), py::arg("jmax"), py::arg("p") = 0,
        "Hilbert function of the quotient in degrees 0..jmax.");

    m.def(
        "witness",
        [](const std::vector<int>& degrees, std::size_t nvars, int a, std::uint32_t p) {
            WitnessResult w = nonrigidity_witness(ci_from(degrees, nvars, p), a);
            return dump(Json{{"index", w.index},
                             {"internal_degree", w.j},
                             {"monomial", w.monomial.str()},
                             {"orientation", "a = d_i + d_{i+1} - j"},
                             {"flag", dm_to_json(w.flag)}});
        },
        py::arg("degrees"), py::arg("nvars"), py::arg("a"), py::arg("p") = 0,
        "A degree-a flag on the Koszul resolution that is not conjugate to the fold.");

    m.def(
        "ci_deficiency_degrees",
        [](const std::vector<int>& degrees) { return ci_deficiency_degrees(degrees); },
        py::arg("degrees"),
        "Degrees where a flag over the complete intersection could shed generators.");

    m.def(
        "pure_deficiency_degrees",
        [](const std::vector<int>& twists) { return pure_deficiency_degrees(twists); },
        py::arg("twist_degrees"),
        "Degrees where a flag on a pure resolution could shed generators.");

    m.def(
        "run_gallery",
        [](unsigned long long budget, unsigned seed) {
            GalleryOptions opt;
            opt.budget = budget;
            opt.seed = seed;
            std::vector<std::tuple<int, std::string, bool, std::string>> out;
            for (const CriterionResult& r : run_gallery(opt))
                out.emplace_back(r.number, r.name, r.passed, r.detail);
            return out;
        },
        py::arg("budget") = 1000000ULL, py::arg("seed") = 20240817u,
        "Run the reproduction gallery; returns (number, name, passed, detail) tuples.");
}
