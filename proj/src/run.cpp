#include "degenop/run.hpp"

#include <fstream>
#include <iostream>

#include "degenop/property_suites.hpp"
#include "degenop/verify_suites.hpp"

namespace degenop {

namespace {

Json load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read config file: " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("schema_version") ||
        j["schema_version"] != kSchemaVersion)
        throw SchemaError("config requires schema_version = 1");
    return j;
}

void check_keys(const Json& j, const std::vector<std::string>& allowed) {
    for (const auto& [key, _] : j.items()) {
        bool ok = key == "schema_version";
        for (const auto& a : allowed) ok = ok || key == a;
        if (!ok) throw SchemaError("config: unknown key '" + key + "'");
    }
}

const Json& field(const Json& j, const char* key) {
    if (!j.contains(key))
        throw SchemaError(std::string("config: missing key '") + key + "'");
    return j.at(key);
}

Json header(const RunOptions& options, const Json& config) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["command"] = options.command;
    j["config_hash"] = config_hash(config);
    j["seed"] = options.seed;
    return j;
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    out << j.dump(1) << "\n";
}

Complex lambda_from(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (!j.is_object() || !j.contains("re"))
        throw SchemaError("lambda: expected number or {re, im}");
    return Complex(j.at("re").get<double>(),
                   j.contains("im") ? j.at("im").get<double>() : 0.0);
}

void require_time_keys(const Json& j) {
    for (const auto& [key, _] : j.items())
        if (key != "tau" && key != "steps" && key != "q")
            throw SchemaError("time: unknown key '" + key + "'");
    if (!j.contains("tau") || !j.contains("steps"))
        throw SchemaError("time: requires tau and steps");
}

GridFunction rhs_from(const Json& j, const GradedMesh& mesh, const SpaceParams& space) {
    if (!j.is_object() || !j.contains("kind") || j.at("kind") != "bump")
        throw SchemaError("rhs: only {kind: bump, center_y, width[, center_x]} supported");
    const double cy = field(j, "center_y").get<double>();
    const double w = field(j, "width").get<double>();
    const double cx = j.contains("center_x") ? j.at("center_x").get<double>() : 0.0;
    return bump_rhs(mesh, cy, w, cx, space.m, space.p);
}

int cmd_analyze(const RunOptions& options, const Json& config) {
    check_keys(config, {"operator", "space"});
    const OperatorParams params = operator_from_json(field(config, "operator"));
    const SpaceParams space = space_from_json(field(config, "space"));
    Json report = header(options, config);
    report.update(analyze_report(params, space));
    write_json(options.out_dir / "analyze.json", report);
    return 0;
}

int cmd_reduce(const RunOptions& options, const Json& config) {
    check_keys(config, {"operator", "space", "bc"});
    const OperatorParams params = operator_from_json(field(config, "operator"));
    const SpaceParams space = space_from_json(field(config, "space"));
    const BoundaryCondition bc = bc_from_json(field(config, "bc"));
    const TransformPipeline pipe = reduce_to_canonical(params, space, bc.kind);
    Json report = header(options, config);
    report["bc"] = to_string(bc.kind);
    report["pipeline"] = to_json(pipe);
    write_json(options.out_dir / "reduce.json", report);
    return 0;
}

int cmd_solve(const RunOptions& options, const Json& config) {
    check_keys(config,
               {"operator", "space", "bc", "mesh", "lambda", "rhs", "engine", "time"});
    ResolventProblem problem;
    problem.params = operator_from_json(field(config, "operator"));
    problem.space = space_from_json(field(config, "space"));
    problem.bc = bc_from_json(field(config, "bc"));
    problem.lambda = lambda_from(field(config, "lambda"));
    Json mesh_cfg = field(config, "mesh");
    bool calibrated = false;
    if (mesh_cfg.contains("y_max") && mesh_cfg.at("y_max").get<double>() <= 0.0) {
        // truncation calibration: double the box until the solution norm
        // settles (the continuous problem lives on the unbounded half-space)
        if (mesh_cfg.contains("nx"))
            throw SchemaError("mesh: automatic y_max works on half-line meshes only");
        const Json rhs_cfg = field(config, "rhs");
        const SpaceParams space = problem.space;
        auto rhs = [&](const GradedMesh& mesh) { return rhs_from(rhs_cfg, mesh, space); };
        mesh_cfg["y_max"] = calibrate_truncation(
            problem.params, space, problem.bc, problem.lambda, rhs,
            mesh_cfg.at("ny").get<int>(), mesh_cfg.at("grading").get<double>());
        calibrated = true;
    }
    problem.mesh = mesh_from_json(mesh_cfg);
    problem.rhs = rhs_from(field(config, "rhs"), problem.mesh, problem.space);
    const std::string engine =
        config.contains("engine") ? config.at("engine").get<std::string>() : "direct";

    SolveInfo info;
    GridFunction u;
    if (engine == "pipeline") {
        u = solve_via_pipeline(problem, &info);
    } else if (engine == "modes") {
        u = solve_canonical_modes(problem, &info);
    } else if (engine == "direct") {
        u = problem.mesh.dim_x == 0 ? solve_resolvent_1d(problem, &info)
                                    : solve_resolvent_2d(problem, &info);
    } else {
        throw SchemaError("engine: expected direct | pipeline | modes");
    }

    // solution payload: rows (x, y, value), or a json array when requested
    if (options.format == "json") {
        Json rows = Json::array();
        for (int j = 0; j < problem.mesh.ny; ++j) {
            const int ni = problem.mesh.dim_x == 0 ? 1 : problem.mesh.nx;
            for (int i = 0; i < ni; ++i) {
                const Complex v = problem.mesh.dim_x == 0 ? u.at(j) : u.at(i, j);
                rows.push_back(Json{{"x", problem.mesh.dim_x == 0 ? 0.0
                                          : problem.mesh.x(i)},
                                    {"y", problem.mesh.y[j]},
                                    {"re", v.real()},
                                    {"im", v.imag()}});
            }
        }
        write_json(options.out_dir / "solution.json", rows);
    } else {
        std::ofstream csv(options.out_dir / "solution.csv");
        csv << "x,y,re,im\n";
        csv.precision(17);
        for (int j = 0; j < problem.mesh.ny; ++j) {
            const int ni = problem.mesh.dim_x == 0 ? 1 : problem.mesh.nx;
            for (int i = 0; i < ni; ++i) {
                const double x = problem.mesh.dim_x == 0 ? 0.0 : problem.mesh.x(i);
                const Complex v = problem.mesh.dim_x == 0 ? u.at(j) : u.at(i, j);
                csv << x << "," << problem.mesh.y[j] << "," << v.real() << ","
                    << v.imag() << "\n";
            }
        }
    }

    Json metrics = header(options, config);
    metrics["engine"] = engine;
    metrics["mesh"] = Json{{"ny", problem.mesh.ny},
                           {"y_max", problem.mesh.y_max},
                           {"y_max_calibrated", calibrated}};
    metrics["solve"] = to_json(info);
    metrics["norms"] = Json{
        {"solution_lpm", weighted_lp_norm(u, problem.space.m, problem.space.p)},
        {"rhs_lpm", weighted_lp_norm(problem.rhs, problem.space.m, problem.space.p)}};
    const IndicialData ind = indicial_roots(problem.params);
    const TraceEstimate trace = boundary_trace(u, ind.s2);
    metrics["trace"] = Json{{"exponent", ind.s2},
                            {"limit_estimate", trace.limit},
                            {"confidence", trace.confidence},
                            {"low_confidence", trace.low_confidence}};

    // optional implicit Euler march with the same forcing held constant
    if (config.contains("time")) {
        const Json& tj = config.at("time");
        require_time_keys(tj);
        const double tau = tj.at("tau").get<double>();
        const int steps = tj.at("steps").get<int>();
        const double q = tj.contains("q") ? tj.at("q").get<double>() : 2.0;
        const GridFunction g0 = problem.rhs;
        const ParabolicResult march =
            parabolic_march(problem.params, problem.space, problem.bc, problem.mesh,
                            [&](double) { return g0; }, tau, steps, q);
        metrics["parabolic"] = Json{{"tau", tau},
                                    {"steps", steps},
                                    {"q", q},
                                    {"ratio", march.report.ratio},
                                    {"dt_part", march.report.dt_part},
                                    {"lu_part", march.report.lu_part},
                                    {"rhs_part", march.report.rhs_part},
                                    {"degenerate", march.report.degenerate}};
    }
    write_json(options.out_dir / "metrics.json", metrics);
    return 0;
}

Json to_json(const SectorSuite& suite) {
    Json entries = Json::array();
    for (const auto& e : suite.entries) {
        Json samples = Json::array();
        for (const auto& s : e.scan.samples)
            samples.push_back(Json{{"re", s.lambda.real()},
                                   {"im", s.lambda.imag()},
                                   {"ratio", s.ratio}});
        entries.push_back(Json{{"name", e.name},
                               {"samples", samples},
                               {"max_ratio", e.scan.max_ratio},
                               {"min_ratio", e.scan.min_ratio},
                               {"spread", e.scan.max_ratio / e.scan.min_ratio}});
    }
    return Json{{"entries", entries}};
}

Json to_json(const EllipticSuite& suite) {
    auto entry_list = [](const std::vector<EllipticEntry>& v) {
        Json arr = Json::array();
        for (const auto& e : v)
            arr.push_back(Json{{"name", e.name},
                               {"second_order", e.ratios.second_order},
                               {"drift", e.ratios.drift},
                               {"x_second", e.ratios.x_second}});
        return arr;
    };
    return Json{{"oblique", entry_list(suite.oblique)},
                {"dirichlet", entry_list(suite.dirichlet)},
                {"witness_split", suite.witness_split}};
}

Json to_json(const TraceSuite& suite) {
    Json entries = Json::array();
    for (const auto& e : suite.entries)
        entries.push_back(Json{{"name", e.name},
                               {"exponent", e.exponent},
                               {"estimates", e.estimates},
                               {"confidences", e.confidences},
                               {"finite_limit", e.finite_limit}});
    return Json{{"entries", entries}};
}

Json to_json(const MaxRegReport& r) {
    return Json{{"ratio", r.ratio},
                {"dt_part", r.dt_part},
                {"lu_part", r.lu_part},
                {"rhs_part", r.rhs_part},
                {"degenerate", r.degenerate}};
}

Json to_json(const MaxRegSuite& suite) {
    Json entries = Json::array();
    for (const auto& e : suite.entries)
        entries.push_back(Json{{"name", e.name},
                               {"coarse", to_json(e.coarse)},
                               {"fine", to_json(e.fine)},
                               {"rel_change", e.rel_change}});
    return Json{{"entries", entries}};
}

Json to_json(const ConvergenceSuite& suite) {
    auto entry_list = [](const std::vector<ConvergenceEntry>& v) {
        Json arr = Json::array();
        for (const auto& e : v)
            arr.push_back(Json{{"name", e.name},
                               {"errors", e.errors},
                               {"orders", e.orders},
                               {"mean_order", e.mean_order}});
        return arr;
    };
    return Json{{"one_d", entry_list(suite.one_d)}, {"two_d", entry_list(suite.two_d)}};
}

Json to_json(const PipelineVsDirectSuite& suite) {
    Json entries = Json::array();
    for (const auto& e : suite.entries)
        entries.push_back(
            Json{{"name", e.name}, {"sizes", e.sizes}, {"rel_diff", e.rel_diff}});
    return Json{{"entries", entries}};
}

int cmd_verify(const RunOptions& options, const Json& config) {
    check_keys(config, {"verify"});
    std::vector<std::string> suites = {"sector", "elliptic", "trace",
                                       "maxreg", "convergence", "pipeline"};
    if (config.contains("verify")) {
        const Json& v = config.at("verify");
        if (!v.is_object() || !v.contains("suites"))
            throw SchemaError("verify: expected {suites: [...]}");
        suites = v.at("suites").get<std::vector<std::string>>();
    }
    for (const auto& name : suites) {
        Json report = header(options, config);
        report["suite"] = name;
        if (name == "sector")
            report["result"] = to_json(run_sector_suite(options.threads));
        else if (name == "elliptic")
            report["result"] = to_json(run_elliptic_suite());
        else if (name == "trace")
            report["result"] = to_json(run_trace_suite());
        else if (name == "maxreg")
            report["result"] = to_json(run_maxreg_suite());
        else if (name == "convergence")
            report["result"] = to_json(run_convergence_suite());
        else if (name == "pipeline")
            report["result"] = to_json(run_pipeline_vs_direct_suite());
        else
            throw SchemaError("verify: unknown suite '" + name + "'");
        write_json(options.out_dir / ("verify_" + name + ".json"), report);
        std::cout << "verify " << name << ": written\n";
    }
    return 0;
}

int cmd_selftest(const RunOptions& options) {
    const std::vector<SuiteResult> results = {
        conjugation_identity_suite(options.seed, 40, 3, 8),
        group_law_suite(options.seed + 1, 60),
        pipeline_postcondition_suite(options.seed + 2, 50),
        isometry_quadrature_suite(options.seed + 3, 6),
    };
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": worst "
                  << r.worst << " (bound " << r.bound << ", " << r.cases << " cases)"
                  << (r.detail.empty() ? "" : " " + r.detail) << "\n";
        ok = ok && r.pass;
    }
    return ok ? 0 : 3;
}

}  // namespace

int run(const RunOptions& options) {
    try {
        std::filesystem::create_directories(options.out_dir);
        if (options.command == "selftest") return cmd_selftest(options);
        Json config;
        if (!options.config_path.empty()) {
            config = load_config(options.config_path);
        } else if (options.command != "verify") {
            throw SchemaError("--config is required for " + options.command);
        } else {
            config["schema_version"] = kSchemaVersion;
        }
        if (options.command == "analyze") return cmd_analyze(options, config);
        if (options.command == "reduce") return cmd_reduce(options, config);
        if (options.command == "solve") return cmd_solve(options, config);
        if (options.command == "verify") return cmd_verify(options, config);
        throw SchemaError("unknown command: " + options.command);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 1;
    } catch (const NotGeneratingError& e) {
        std::cerr << "not generating: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace degenop
