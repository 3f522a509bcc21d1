#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "degenop/solver.hpp"
#include "degenop/verify_suites.hpp"

using namespace degenop;

namespace {

OperatorParams halfline(double gamma, double c, double b, double alpha = 0.0) {
    OperatorParams p;
    p.dim_x = 0;
    p.alpha1 = p.alpha2 = alpha;
    p.Q = Matrix(0, 0);
    p.q = Vector(0);
    p.d = Vector(0);
    p.gamma = gamma;
    p.c = c;
    p.b = b;
    return p;
}

OperatorParams plane(double a1, double a2, double Q, double q, double gamma, double d,
                     double c, double b) {
    OperatorParams p;
    p.dim_x = 1;
    p.alpha1 = a1;
    p.alpha2 = a2;
    p.Q = (Matrix(1, 1) << Q).finished();
    p.q = (Vector(1) << q).finished();
    p.gamma = gamma;
    p.d = (Vector(1) << d).finished();
    p.c = c;
    p.b = b;
    return p;
}

TestFunction gaussian_profile() {
    TestFunction::Term t;
    t.coeff = 1.0;
    t.decay = 1.0;
    return TestFunction(0, {t});
}

GridFunction manufactured_rhs(const OperatorParams& params, const SmoothFunction& u,
                              Complex lambda, const GradedMesh& mesh,
                              const SpaceParams& space) {
    GridFunction f = GridFunction::zero(mesh, space.m, space.p);
    Vector x(mesh.dim_x);
    for (int j = 0; j < mesh.ny; ++j) {
        const int ni = mesh.dim_x == 0 ? 1 : mesh.nx;
        for (int i = 0; i < ni; ++i) {
            if (mesh.dim_x > 0) x(0) = mesh.x(i);
            const int idx = mesh.dim_x == 0 ? j : mesh.index(i, j);
            f.values(idx) = lambda * u.value(x, mesh.y[j]) -
                            apply_operator(params, u, x, mesh.y[j]);
        }
    }
    return f;
}

double max_error(const GridFunction& u, const SmoothFunction& exact) {
    double err = 0.0;
    Vector x(u.mesh.dim_x);
    for (int j = 0; j < u.mesh.ny; ++j) {
        const int ni = u.mesh.dim_x == 0 ? 1 : u.mesh.nx;
        for (int i = 0; i < ni; ++i) {
            if (u.mesh.dim_x > 0) x(0) = u.mesh.x(i);
            const int idx = u.mesh.dim_x == 0 ? j : u.mesh.index(i, j);
            err = std::max(err,
                           std::abs(u.values(idx) - Complex(exact.value(x, u.mesh.y[j]))));
        }
    }
    return err;
}

}  // namespace

TEST_CASE("zero forcing gives the zero solution") {
    const GradedMesh line = GradedMesh::half_line(80, 8.0, 2.0);
    ResolventProblem problem{halfline(1.0, 1.0, 0.0), {2.0, 0.0},
                             BoundaryCondition::neumann(), Complex(1.0, 0.0), line,
                             GridFunction::zero(line)};
    CHECK(solve_resolvent_1d(problem).values.cwiseAbs().maxCoeff() == 0.0);

    const GradedMesh box = GradedMesh::half_plane(16, std::numbers::pi, 40, 8.0, 2.0);
    ResolventProblem p2{plane(0.0, 0.0, 1.0, 0.3, 1.0, 0.2, 1.0, 0.0), {2.0, 0.0},
                        BoundaryCondition::oblique(), Complex(1.0, 0.0), box,
                        GridFunction::zero(box)};
    CHECK(solve_resolvent_2d(p2).values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("solver rejects lambda outside the right half-plane and "
          "non-generating configurations") {
    const GradedMesh line = GradedMesh::half_line(60, 8.0, 2.0);
    ResolventProblem problem{halfline(1.0, 1.0, 0.0), {2.0, 0.0},
                             BoundaryCondition::neumann(), Complex(-1.0, 0.0), line,
                             GridFunction::zero(line)};
    CHECK_THROWS_AS(solve_resolvent_1d(problem), std::invalid_argument);
    // (m+1)/p above the window
    ResolventProblem bad{halfline(1.0, 0.2, 0.0, 1.5), {2.0, 1.0},
                         BoundaryCondition::neumann(), Complex(1.0, 0.0), line,
                         GridFunction::zero(line)};
    CHECK_THROWS_AS(solve_resolvent_1d(bad), NotGeneratingError);
}

TEST_CASE("manufactured half-line solve converges at second order") {
    const OperatorParams params = halfline(1.0, 1.0, 0.0);
    const SpaceParams space{2.0, 0.0};
    const auto exact = std::make_shared<TestFunction>(gaussian_profile());
    std::vector<double> errors;
    for (int ny : {64, 128, 256}) {
        const GradedMesh mesh = GradedMesh::half_line(ny, 8.0, 2.0);
        ResolventProblem problem{params, space, BoundaryCondition::neumann(),
                                 Complex(1.0, 0.0), mesh,
                                 manufactured_rhs(params, *exact, 1.0, mesh, space)};
        SolveInfo info;
        const GridFunction u = solve_resolvent_1d(problem, &info);
        CHECK(info.residual <= 1e-10);
        errors.push_back(max_error(u, *exact));
    }
    CHECK(std::log2(errors[0] / errors[1]) > 1.6);
    CHECK(std::log2(errors[1] / errors[2]) > 1.6);
}

TEST_CASE("resolvent norm scaling stays within one decade") {
    const OperatorParams params = halfline(1.0, 1.0, 0.0);
    const SpaceParams space{2.0, 0.0};
    const GradedMesh mesh = GradedMesh::half_line(400, 32.0, 2.0);
    const GridFunction f = bump_rhs(mesh, 1.5, 1.0, 0.0, space.m, space.p);
    const double nf = weighted_lp_norm(f, space.m, space.p);
    std::vector<double> ratios;
    for (double mag : {1.0, 10.0, 100.0}) {
        ResolventProblem problem{params, space, BoundaryCondition::neumann(),
                                 Complex(mag, 0.0), mesh, f};
        const GridFunction u = solve_resolvent_1d(problem);
        ratios.push_back(mag * weighted_lp_norm(u, space.m, space.p) / nf);
    }
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    CHECK(hi / lo <= 10.0);
}

TEST_CASE("separable forcing: plane solve agrees with the tangential mode solve") {
    const double k = 2.0;
    const OperatorParams params = plane(0.5, 0.5, 1.3, 0.0, 1.0, 0.0, 1.0, 0.0);
    const SpaceParams space{2.0, 0.0};
    const GradedMesh mesh = GradedMesh::half_plane(64, std::numbers::pi, 96, 8.0, 2.0);

    GridFunction f = GridFunction::zero(mesh, space.m, space.p);
    TestFunction::Term t;
    t.coeff = 1.0;
    t.ypow = 1;
    t.decay = 1.0;
    const TestFunction g(0, {t});
    for (int j = 0; j < mesh.ny; ++j)
        for (int i = 0; i < mesh.nx; ++i)
            f.at(i, j) = std::cos(k * mesh.x(i)) * g.value1d(mesh.y[j]);

    ResolventProblem problem{params, space, BoundaryCondition::neumann(),
                             Complex(1.0, 0.0), mesh, f};
    const GridFunction u2d = solve_resolvent_2d(problem);

    // the discrete tangential symbol of the centered second difference
    const double dx = mesh.dx();
    const double k_hat2 = 2.0 * (1.0 - std::cos(k * dx)) / (dx * dx);
    ModeOperator mode;
    mode.xi = k;
    mode.alpha = 0.5;
    mode.gamma = 1.0;
    mode.c = 1.0;
    mode.qxx = params.Q(0, 0) * k_hat2;
    const GradedMesh column = GradedMesh::half_line(96, 8.0, 2.0);
    GridFunction fcol = GridFunction::zero(column, space.m, space.p);
    for (int j = 0; j < column.ny; ++j) fcol.at(j) = g.value1d(column.y[j]);
    const GridFunction ucol = solve_mode(mode, space, Complex(1.0, 0.0), fcol);

    double worst_exact = 0.0, worst_symbol = 0.0;
    ModeOperator cont = mode;
    cont.qxx = params.Q(0, 0) * k * k;
    const GridFunction ucont = solve_mode(cont, space, Complex(1.0, 0.0), fcol);
    for (int j = 0; j < mesh.ny; ++j)
        for (int i = 0; i < mesh.nx; ++i) {
            const Complex sep = std::cos(k * mesh.x(i)) * ucol.at(j);
            const Complex con = std::cos(k * mesh.x(i)) * ucont.at(j);
            worst_exact = std::max(worst_exact, std::abs(u2d.at(i, j) - sep));
            worst_symbol = std::max(worst_symbol, std::abs(u2d.at(i, j) - con));
        }
    CHECK(worst_exact <= 1e-10);   // same discretization, different route
    CHECK(worst_symbol <= 5e-3);   // continuous-symbol mode agrees to O(dx^2)
}

TEST_CASE("manufactured plane solve with mixed derivative converges") {
    const OperatorParams params = plane(0.5, 0.5, 1.0, 0.4, 1.0, 0.0, 1.2, 0.0);
    const SpaceParams space{2.0, 0.0};
    const auto exact = std::make_shared<CosineProfile>(1.0, 0.0, gaussian_profile());
    std::vector<double> errors;
    for (int n : {24, 48, 96}) {
        const GradedMesh mesh = GradedMesh::half_plane(n, std::numbers::pi, n, 8.0, 2.0);
        ResolventProblem problem{params, space, BoundaryCondition::neumann(),
                                 Complex(1.0, 0.0), mesh,
                                 manufactured_rhs(params, *exact, 1.0, mesh, space)};
        SolveInfo info;
        const GridFunction u = solve_resolvent_2d(problem, &info);
        CHECK(info.residual <= 1e-8);
        errors.push_back(max_error(u, *exact));
    }
    CHECK(std::log2(errors[0] / errors[1]) > 1.5);
    CHECK(std::log2(errors[1] / errors[2]) > 1.5);
}

TEST_CASE("pipeline solve on a canonical operator is the direct solve, bit for bit") {
    const OperatorParams params = plane(0.2, 0.2, 1.0, 0.3, 1.0, 0.0, 1.0, 0.0);
    const SpaceParams space{2.0, 0.0};
    const GradedMesh mesh = GradedMesh::half_plane(24, std::numbers::pi, 48, 8.0, 2.0);
    ResolventProblem problem{params, space, BoundaryCondition::oblique(),
                             Complex(1.0, 0.0), mesh,
                             bump_rhs(mesh, 1.0, 0.7, 0.0, space.m, space.p)};
    TransformPipeline pipe;
    const GridFunction direct = solve_resolvent_2d(problem);
    const GridFunction piped = solve_via_pipeline(problem, nullptr, &pipe);
    CHECK(pipe.empty());
    CHECK((piped.values - direct.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pipeline solve approaches the direct solve under refinement") {
    const OperatorParams params = plane(0.0, 0.0, 1.0, 0.3, 1.0, 0.4, 1.0, 0.0);
    const SpaceParams space{2.0, 0.0};
    std::vector<double> diffs;
    for (int n : {32, 64}) {
        const GradedMesh mesh = GradedMesh::half_plane(n, std::numbers::pi, n, 8.0, 2.0);
        ResolventProblem problem{params, space, BoundaryCondition::oblique(),
                                 Complex(1.0, 0.0), mesh,
                                 bump_rhs(mesh, 1.0, 0.7, 0.0, space.m, space.p)};
        const GridFunction direct = solve_resolvent_2d(problem);
        const GridFunction piped = solve_via_pipeline(problem);
        GridFunction diff = direct;
        diff.values = piped.values - direct.values;
        diffs.push_back(weighted_lp_norm(diff, space.m, space.p) /
                        weighted_lp_norm(direct, space.m, space.p));
    }
    CHECK(diffs[0] < 0.2);
    CHECK(diffs[1] < diffs[0]);
}

TEST_CASE("half-line dirichlet pipeline solve matches the direct route "
          "and the trace vanishes") {
    const OperatorParams params = halfline(1.0, 0.0, 0.75);
    const SpaceParams space{2.0, 0.0};
    const GradedMesh mesh = GradedMesh::half_line(240, 12.0, 2.0);
    ResolventProblem problem{params, space, BoundaryCondition::dirichlet(),
                             Complex(1.0, 0.0), mesh,
                             bump_rhs(mesh, 1.5, 0.7, 0.0, space.m, space.p)};
    TransformPipeline pipe;
    const GridFunction piped = solve_via_pipeline(problem, nullptr, &pipe);
    REQUIRE(pipe.stages.size() == 1);  // single multiplication step
    const GridFunction direct = solve_resolvent_1d(problem);
    CHECK((piped.values - direct.values).cwiseAbs().maxCoeff() <=
          1e-14 * direct.values.cwiseAbs().maxCoeff());
    const IndicialData ind = indicial_roots(params);
    CHECK(std::abs(boundary_trace(piped, ind.s2).limit) <= 1e-2);
}

TEST_CASE("dirichlet solve satisfies the weighted trace condition") {
    const OperatorParams params = halfline(1.0, 0.0, 0.75);
    const SpaceParams space{2.0, 0.0};
    const IndicialData ind = indicial_roots(params);
    std::vector<double> estimates;
    for (int ny : {160, 320}) {
        const GradedMesh mesh = GradedMesh::half_line(ny, 12.0, 2.0);
        ResolventProblem problem{params, space, BoundaryCondition::dirichlet(),
                                 Complex(1.0, 0.0), mesh,
                                 bump_rhs(mesh, 1.5, 0.7, 0.0, space.m, space.p)};
        const GridFunction u = solve_resolvent_1d(problem);
        estimates.push_back(std::abs(boundary_trace(u, ind.s2).limit));
    }
    CHECK(estimates[0] <= 1e-2);
    CHECK(estimates[1] <= estimates[0]);
}

TEST_CASE("one implicit step equals the resolvent at 1/tau, bit for bit") {
    const OperatorParams params = halfline(1.0, 1.0, 0.0);
    const SpaceParams space{2.0, 0.0};
    const GradedMesh mesh = GradedMesh::half_line(120, 10.0, 2.0);
    const GridFunction g0 = bump_rhs(mesh, 1.0, 0.8, 0.0, space.m, space.p);
    const double tau = 0.25;
    const ParabolicResult march = parabolic_march(
        params, space, BoundaryCondition::neumann(), mesh,
        [&](double) { return g0; }, tau, 1);
    ResolventProblem problem{params, space, BoundaryCondition::neumann(),
                             Complex(1.0 / tau, 0.0), mesh, g0};
    const GridFunction resolvent = solve_resolvent_1d(problem);
    REQUIRE(march.trajectory.size() == 1);
    CHECK((march.trajectory[0].values - resolvent.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero forcing march is degenerate") {
    const OperatorParams params = halfline(1.0, 1.0, 0.0);
    const GradedMesh mesh = GradedMesh::half_line(60, 8.0, 2.0);
    const ParabolicResult march = parabolic_march(
        params, {2.0, 0.0}, BoundaryCondition::neumann(), mesh,
        [&](double) { return GridFunction::zero(mesh); }, 0.1, 4);
    CHECK(march.report.degenerate);
    CHECK(march.report.ratio == 0.0);
    for (const auto& u : march.trajectory)
        CHECK(u.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("maximal-regularity ratio is stable under step halving") {
    const OperatorParams params = halfline(1.0, 1.0, 0.0);
    const SpaceParams space{2.0, 0.0};
    const GradedMesh mesh = GradedMesh::half_line(200, 12.0, 2.0);
    const GridFunction g0 = bump_rhs(mesh, 1.2, 0.8, 0.0, space.m, space.p);
    auto g = [&](double) { return g0; };
    const auto coarse =
        parabolic_march(params, space, BoundaryCondition::neumann(), mesh, g, 0.1, 16);
    const auto fine =
        parabolic_march(params, space, BoundaryCondition::neumann(), mesh, g, 0.05, 32);
    CHECK(std::abs(fine.report.ratio - coarse.report.ratio) <=
          0.2 * coarse.report.ratio);
}

TEST_CASE("canonical mode path agrees with the direct plane solve") {
    const OperatorParams params = plane(0.3, 0.3, 1.1, 0.25, 1.0, 0.0, 0.9, 0.0);
    const SpaceParams space{2.0, 0.0};
    const GradedMesh mesh = GradedMesh::half_plane(32, std::numbers::pi, 64, 8.0, 2.0);
    ResolventProblem problem{params, space, BoundaryCondition::neumann(),
                             Complex(2.0, 1.0), mesh,
                             bump_rhs(mesh, 1.0, 0.8, 0.0, space.m, space.p)};
    const GridFunction direct = solve_resolvent_2d(problem);
    const GridFunction modes = solve_canonical_modes(problem);
    GridFunction diff = direct;
    diff.values = modes.values - direct.values;
    CHECK(weighted_lp_norm(diff, space.m, space.p) /
              weighted_lp_norm(direct, space.m, space.p) <=
          5e-2);
}
