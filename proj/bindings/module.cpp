#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "degenop/generation.hpp"
#include "degenop/property_suites.hpp"
#include "degenop/serialization.hpp"
#include "degenop/solver.hpp"
#include "degenop/verify_suites.hpp"

namespace py = pybind11;
using namespace degenop;

namespace {

OperatorParams params_from_dict(const py::dict& d) {
    py::object dumps = py::module_::import("json").attr("dumps");
    return operator_from_json(Json::parse(py::cast<std::string>(dumps(d))));
}

py::object json_to_py(const Json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

std::vector<double> real_values(const GridFunction& g) {
    std::vector<double> out(g.values.size());
    for (int i = 0; i < g.values.size(); ++i) out[i] = g.values(i).real();
    return out;
}

}  // namespace

PYBIND11_MODULE(degenop, m) {
    m.doc() = "similarity-transform calculus, generation analysis and resolvent "
              "solves for degenerate elliptic operators on the half-space";

    py::class_<SpaceParams>(m, "Space")
        .def(py::init([](double p, double mexp) {
                 return SpaceParams{p, mexp};
             }),
             py::arg("p"), py::arg("m"))
        .def_readwrite("p", &SpaceParams::p)
        .def_readwrite("m", &SpaceParams::m)
        .def_property_readonly("value_mp", &SpaceParams::value_mp);

    py::class_<OperatorParams>(m, "Operator")
        .def(py::init(&params_from_dict), py::arg("record"))
        .def_static("from_json",
                    [](const std::string& text) {
                        return operator_from_json(Json::parse(text));
                    })
        .def_property_readonly("dim_x", [](const OperatorParams& p) { return p.dim_x; })
        .def_property_readonly("beta_alpha", &OperatorParams::beta_alpha)
        .def_property_readonly("discriminant", &OperatorParams::discriminant)
        .def("to_json", [](const OperatorParams& p) { return to_json(p).dump(); });

    m.def("validate", [](const OperatorParams& p) { return validate(p).violations; });
    m.def("indicial_roots", [](const OperatorParams& p) {
        const IndicialData ind = indicial_roots(p);
        return py::make_tuple(ind.D, ind.s1, ind.s2);
    });
    m.def(
        "conjugate_by_kelvin",
        [](const OperatorParams& p, const SpaceParams& s, double k, double beta) {
            auto [p2, s2] = conjugate_by_kelvin(p, s, k, beta);
            return py::make_tuple(p2, s2);
        },
        py::arg("operator"), py::arg("space"), py::arg("k"), py::arg("beta"));
    m.def("conjugate_by_shift_matched",
          [](const OperatorParams& p, const std::vector<double>& omega) {
              Vector w(omega.size());
              for (size_t i = 0; i < omega.size(); ++i) w(i) = omega[i];
              return conjugate_by_shift_matched(p, w);
          });
    m.def(
        "reduce_to_canonical",
        [](const OperatorParams& p, const SpaceParams& s, const std::string& mode) {
            const BcKind kind = mode == "dirichlet" ? BcKind::dirichlet : BcKind::oblique;
            return json_to_py(to_json(reduce_to_canonical(p, s, kind)));
        },
        py::arg("operator"), py::arg("space"), py::arg("mode"));
    m.def(
        "check_generation",
        [](const OperatorParams& p, const SpaceParams& s, const std::string& bc) {
            return json_to_py(to_json(check_generation(p, s, bc_from_json(Json(bc)))));
        },
        py::arg("operator"), py::arg("space"), py::arg("bc"));
    m.def(
        "domain_description",
        [](const OperatorParams& p, const SpaceParams& s, const std::string& bc) {
            return json_to_py(to_json(domain_description(p, s, bc_from_json(Json(bc)))));
        },
        py::arg("operator"), py::arg("space"), py::arg("bc"));
    m.def("regime_flags", [](const OperatorParams& p, const SpaceParams& s) {
        std::vector<std::string> out;
        for (RegimeFlag f : regime_flags(p, s)) out.push_back(to_string(f));
        return out;
    });
    m.def(
        "analyze",
        [](const OperatorParams& p, const SpaceParams& s) {
            return json_to_py(analyze_report(p, s));
        },
        py::arg("operator"), py::arg("space"));

    m.def(
        "solve_resolvent",
        [](const OperatorParams& p, const SpaceParams& s, const std::string& bc,
           Complex lambda, int ny, double y_max, double grading, int nx, double x_half,
           double center_y, double width) {
            const GradedMesh mesh =
                nx > 0 ? GradedMesh::half_plane(nx, x_half, ny, y_max, grading)
                       : GradedMesh::half_line(ny, y_max, grading);
            ResolventProblem problem{p, s, bc_from_json(Json(bc)), lambda, mesh,
                                     bump_rhs(mesh, center_y, width, 0.0, s.m, s.p)};
            SolveInfo info;
            const GridFunction u = mesh.dim_x == 0 ? solve_resolvent_1d(problem, &info)
                                                   : solve_resolvent_2d(problem, &info);
            py::dict out;
            out["y"] = mesh.y;
            out["values"] = real_values(u);
            out["residual"] = info.residual;
            const IndicialData ind = indicial_roots(p);
            out["trace_exponent"] = ind.s2;
            out["trace_estimate"] = boundary_trace(u, ind.s2).limit;
            out["norm"] = weighted_lp_norm(u, s.m, s.p);
            return out;
        },
        py::arg("operator"), py::arg("space"), py::arg("bc"), py::arg("lambda_"),
        py::arg("ny") = 240, py::arg("y_max") = 12.0, py::arg("grading") = 2.0,
        py::arg("nx") = 0, py::arg("x_half") = 0.0, py::arg("center_y") = 1.0,
        py::arg("width") = 0.7);

    m.def("selftest", [](std::uint64_t seed) {
        py::dict out;
        for (const SuiteResult& r :
             {conjugation_identity_suite(seed, 10, 2, 4), group_law_suite(seed, 15),
              pipeline_postcondition_suite(seed, 15)}) {
            py::dict entry;
            entry["pass"] = r.pass;
            entry["worst"] = r.worst;
            entry["bound"] = r.bound;
            out[py::str(r.name)] = entry;
        }
        return out;
    }, py::arg("seed") = 7);

    m.attr("__version__") = kToolVersion;
}
