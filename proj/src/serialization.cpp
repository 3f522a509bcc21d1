#include "degenop/serialization.hpp"

#include <set>

namespace degenop {

const char* const kToolVersion = "0.1.0";

namespace {

Json vec_to_json(const Vector& v) {
    Json out = Json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Json mat_to_json(const Matrix& m) {  // row-major list
    Json out = Json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
    return out;
}

void require_keys(const Json& j, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const char* what) {
    if (!j.is_object()) throw SchemaError(std::string(what) + ": object expected");
    for (const auto& [key, _] : j.items()) {
        if (!required.count(key) && !optional.count(key))
            throw SchemaError(std::string(what) + ": unknown key '" + key + "'");
    }
    for (const auto& key : required)
        if (!j.contains(key))
            throw SchemaError(std::string(what) + ": missing key '" + key + "'");
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) throw SchemaError(std::string(what) + ": number expected");
    return j.get<double>();
}

Vector vector_field(const Json& j, int n, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw SchemaError(std::string(what) + ": array of length dim_x expected");
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = number(j[i], what);
    return v;
}

}  // namespace

Json to_json(const OperatorParams& params) {
    Json j;
    j["dim_x"] = params.dim_x;
    j["alpha1"] = params.alpha1;
    j["alpha2"] = params.alpha2;
    j["Q"] = mat_to_json(params.Q);
    j["q"] = vec_to_json(params.q);
    j["gamma"] = params.gamma;
    j["d"] = vec_to_json(params.d);
    j["c"] = params.c;
    j["b"] = params.b;
    return j;
}

OperatorParams operator_from_json(const Json& j) {
    require_keys(j, {"dim_x", "alpha1", "alpha2", "Q", "q", "gamma", "d", "c", "b"}, {},
                 "operator");
    OperatorParams p;
    if (!j["dim_x"].is_number_integer() || j["dim_x"].get<int>() < 0)
        throw SchemaError("operator: dim_x must be a nonnegative integer");
    p.dim_x = j["dim_x"].get<int>();
    p.alpha1 = number(j["alpha1"], "operator.alpha1");
    p.alpha2 = number(j["alpha2"], "operator.alpha2");
    const int n = p.dim_x;
    if (!j["Q"].is_array() || static_cast<int>(j["Q"].size()) != n * n)
        throw SchemaError("operator: Q must be a row-major list of dim_x^2 numbers");
    p.Q.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) p.Q(r, c) = number(j["Q"][r * n + c], "operator.Q");
    p.q = vector_field(j["q"], n, "operator.q");
    p.gamma = number(j["gamma"], "operator.gamma");
    p.d = vector_field(j["d"], n, "operator.d");
    p.c = number(j["c"], "operator.c");
    p.b = number(j["b"], "operator.b");
    return p;
}

Json to_json(const SpaceParams& space) {
    Json j;
    j["p"] = space.p;
    j["m"] = space.m;
    return j;
}

SpaceParams space_from_json(const Json& j) {
    require_keys(j, {"p", "m"}, {}, "space");
    SpaceParams s;
    s.p = number(j["p"], "space.p");
    s.m = number(j["m"], "space.m");
    if (!(s.p > 1.0)) throw SchemaError("space: p must exceed 1");
    return s;
}

BoundaryCondition bc_from_json(const Json& j) {
    std::string kind;
    if (j.is_string())
        kind = j.get<std::string>();
    else {
        require_keys(j, {"kind"}, {}, "bc");
        kind = j["kind"].get<std::string>();
    }
    if (kind == "neumann") return BoundaryCondition::neumann();
    if (kind == "oblique") return BoundaryCondition::oblique();
    if (kind == "dirichlet") return BoundaryCondition::dirichlet();
    throw SchemaError("bc: expected neumann | oblique | dirichlet");
}

GradedMesh mesh_from_json(const Json& j) {
    require_keys(j, {"ny", "y_max", "grading"}, {"nx", "x_half"}, "mesh");
    const int ny = j["ny"].get<int>();
    const double ymax = number(j["y_max"], "mesh.y_max");
    const double r = number(j["grading"], "mesh.grading");
    if (j.contains("nx")) {
        if (!j.contains("x_half")) throw SchemaError("mesh: nx requires x_half");
        return GradedMesh::half_plane(j["nx"].get<int>(), number(j["x_half"], "mesh.x_half"),
                                      ny, ymax, r);
    }
    return GradedMesh::half_line(ny, ymax, r);
}

Json to_json(const ValidationReport& report) {
    Json j;
    j["admissible"] = report.admissible();
    j["violations"] = report.violations;
    return j;
}

Json to_json(const IndicialData& ind) {
    Json j;
    j["D"] = ind.D;
    j["s1"] = ind.s1;
    j["s2"] = ind.s2;
    return j;
}

Json to_json(const GenerationReport& report) {
    Json j;
    j["generates"] = report.generates;
    if (report.window) {
        j["window"] = Json{{"lo", report.window->lo}, {"hi", report.window->hi}};
    } else {
        j["window"] = nullptr;
    }
    j["value_mp"] = report.value_mp;
    j["theorem"] = report.theorem;
    j["reasons"] = report.reasons;
    return j;
}

Json to_json(const DomainSpec& spec) {
    Json j;
    j["space_family"] = spec.space_family;
    j["w"] = Json{{"d", vec_to_json(spec.w_d)}, {"c", spec.w_c}};
    j["weight_shift"] = spec.weight_shift;
    Json trace;
    trace["exponent"] = spec.trace.exponent;
    trace["limit"] = spec.trace.finite_limit ? "finite" : "zero";
    if (spec.trace.weight_dx.has_value()) {
        trace["weights"] =
            Json{{"dx", vec_to_json(*spec.trace.weight_dx)}, {"dy", *spec.trace.weight_dy}};
    } else {
        trace["weights"] = nullptr;
    }
    j["trace_condition"] = trace;
    Json flags = Json::array();
    for (RegimeFlag f : spec.equivalence_flags) flags.push_back(to_string(f));
    j["equivalence_flags"] = flags;
    j["core_description"] = spec.core_description;
    return j;
}

Json to_json(const TransformPipeline& pipe) {
    auto block = [](const OperatorParams& p, const SpaceParams& s, const IndicialData& i) {
        return Json{{"operator", to_json(p)}, {"space", to_json(s)}, {"indicial", to_json(i)}};
    };
    Json steps = Json::array();
    IndicialData before = pipe.source_indicial;
    for (const auto& stage : pipe.stages) {
        Json st;
        if (std::holds_alternative<KelvinStep>(stage.step)) {
            const auto& k = std::get<KelvinStep>(stage.step);
            st["kind"] = "kelvin";
            st["k"] = k.k;
            st["beta"] = k.beta;
            st["omega"] = nullptr;
        } else {
            const auto& s = std::get<ShiftStep>(stage.step);
            st["kind"] = "shift";
            st["k"] = nullptr;
            st["beta"] = s.beta;
            st["omega"] = vec_to_json(s.omega);
        }
        st["indicial_before"] = to_json(before);
        st["indicial_after"] = to_json(stage.indicial_after);
        st["operator_after"] = to_json(stage.params_after);
        st["space_after"] = to_json(stage.space_after);
        steps.push_back(st);
        before = stage.indicial_after;
    }
    Json j;
    j["source"] = block(pipe.source_params, pipe.source_space, pipe.source_indicial);
    j["steps"] = steps;
    j["target"] = block(pipe.target_params(), pipe.target_space(), pipe.target_indicial());
    j["prefactor"] = pipe.prefactor();
    return j;
}

Json to_json(const SolveInfo& info) {
    Json j;
    j["residual"] = info.residual;
    j["unknowns"] = info.unknowns;
    Json t;
    t["assemble_seconds"] = info.assemble_seconds;
    t["solve_seconds"] = info.solve_seconds;
    j["timings"] = t;
    return j;
}

Json analyze_report(const OperatorParams& params, const SpaceParams& space) {
    Json j;
    const ValidationReport val = validate(params);
    j["validation"] = to_json(val);
    if (!val.admissible()) {
        Json ind;
        ind["D"] = params.gamma > 0 ? Json(params.discriminant()) : Json(nullptr);
        ind["s1"] = nullptr;
        ind["s2"] = nullptr;
        j["indicial"] = ind;
        Json gen;
        for (const char* mode : {"oblique", "dirichlet"}) {
            Json g;
            g["generates"] = false;
            g["window"] = nullptr;
            g["value_mp"] = space.value_mp();
            std::string suffix = params.dim_x == 0
                                     ? "_halfline"
                                     : (params.equal_exponents() ? "_equal_exponents"
                                                                 : "_general_exponents");
            g["theorem"] = std::string(mode) + suffix;
            g["reasons"] = Json::array({"operator parameters inadmissible"});
            gen[mode] = g;
        }
        j["generation"] = gen;
        j["domain_spec"] = Json{{"oblique", nullptr}, {"dirichlet", nullptr}};
        j["flags"] = Json::array();
        j["pipeline"] = Json{{"oblique", nullptr}, {"dirichlet", nullptr}};
        return j;
    }

    j["indicial"] = to_json(indicial_roots(params));
    const std::string suffix = params.dim_x == 0
                                   ? "_halfline"
                                   : (params.equal_exponents() ? "_equal_exponents"
                                                               : "_general_exponents");
    Json gen, dom, pipes;
    // oblique side
    if (params.b != 0.0) {
        Json g;
        g["generates"] = false;
        g["window"] = nullptr;
        g["value_mp"] = space.value_mp();
        g["theorem"] = "oblique" + suffix;
        g["reasons"] = Json::array({"oblique analysis requires zero potential (b = 0)"});
        gen["oblique"] = g;
        dom["oblique"] = nullptr;
        pipes["oblique"] = nullptr;
    } else {
        const GenerationReport g =
            check_generation(params, space, BoundaryCondition::oblique());
        gen["oblique"] = to_json(g);
        dom["oblique"] =
            g.generates
                ? to_json(domain_description(params, space, BoundaryCondition::oblique()))
                : Json(nullptr);
        try {
            pipes["oblique"] = to_json(reduce_to_canonical(params, space, BcKind::oblique));
        } catch (const std::exception&) {
            pipes["oblique"] = nullptr;
        }
    }
    // dirichlet side
    {
        const GenerationReport g =
            check_generation(params, space, BoundaryCondition::dirichlet());
        gen["dirichlet"] = to_json(g);
        dom["dirichlet"] =
            g.generates
                ? to_json(domain_description(params, space, BoundaryCondition::dirichlet()))
                : Json(nullptr);
        pipes["dirichlet"] = to_json(reduce_to_canonical(params, space, BcKind::dirichlet));
    }
    j["generation"] = gen;
    j["domain_spec"] = dom;
    Json flags = Json::array();
    for (RegimeFlag f : regime_flags(params, space)) flags.push_back(to_string(f));
    j["flags"] = flags;
    j["pipeline"] = pipes;
    return j;
}

std::string config_hash(const Json& config) {
    // sorted-key dump so the hash is independent of insertion order
    const std::string s = nlohmann::json(config).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace degenop
