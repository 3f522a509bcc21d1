#include "degenop/solver.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>

#include "degenop/fft.hpp"

namespace degenop {

namespace {

using cd = Complex;
using SparseC = Eigen::SparseMatrix<cd>;
using Triplet = Eigen::Triplet<cd>;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// scalar coefficient data of one y-column:
//   A(y) w'' + B(y) w' + C(y) w,
//   A = g y^{a2},  B = c y^{a2-1} + mix y^{(a1+a2)/2},
//   C = -qxx y^{a1} + dxi y^{(a1+a2)/2-1} - b y^{a2-2}
struct ColumnCoeffs {
    double a1 = 0.0, a2 = 0.0;
    double gamma = 1.0, c = 0.0, b = 0.0;
    cd mix = 0.0;  // 2 i (q . xi)
    cd qxx = 0.0;  // (Q xi, xi)
    cd dxi = 0.0;  // i (d . xi)

    cd A(double y) const { return gamma * std::pow(y, a2); }
    cd B(double y) const {
        return c * std::pow(y, a2 - 1.0) + mix * std::pow(y, 0.5 * (a1 + a2));
    }
    cd C(double y) const {
        cd v = -b * std::pow(y, a2 - 2.0);
        if (qxx != 0.0) v -= qxx * std::pow(y, a1);
        if (dxi != 0.0) v += dxi * std::pow(y, 0.5 * (a1 + a2) - 1.0);
        return v;
    }
};

// multiplication substitution u = y^{-s1} w for dirichlet problems
struct Reduction {
    OperatorParams params;
    SpaceParams space;
    double s1 = 0.0;
};

Reduction reduce_potential(const OperatorParams& params, const SpaceParams& space,
                           const BoundaryCondition& bc) {
    if (bc.kind == BcKind::dirichlet) {
        const IndicialData ind = indicial_roots(params);
        if (std::abs(ind.s1) >
            1e-14 * (1.0 + std::abs(params.c / params.gamma))) {
            auto [p2, sp2] = conjugate_by_kelvin(params, space, -ind.s1, 0.0);
            return {p2, sp2, ind.s1};
        }
    }
    return {params, space, 0.0};
}

bool boundary_row_needed(const OperatorParams& reduced, const SpaceParams& rspace) {
    // no condition is needed when (m+1)/p > 1 - alpha2
    return !(rspace.value_mp() > 1.0 - reduced.alpha2);
}

void check_lambda(cd lambda) {
    if (!(lambda.real() > 0.0))
        throw std::invalid_argument("resolvent requires Re lambda > 0");
}

// ---------------------------------------------------------------------------
// assembled linear system (lambda - L~) w = y^{s1} f with boundary rows
// ---------------------------------------------------------------------------

struct AssembledSystem {
    GradedMesh mesh;
    Reduction red;
    SpaceParams space_orig;
    cd lambda;
    bool bc_row0 = false;
    SparseC M;  // row-equilibrated
    Eigen::VectorXd row_scale;
    std::unique_ptr<Eigen::SparseLU<SparseC>> lu;
    double assemble_seconds = 0.0;
    double factor_seconds = 0.0;

    Eigen::VectorXcd to_system_rhs(const GridFunction& f) const {
        const int J = mesh.ny;
        const int nxl = mesh.dim_x == 0 ? 1 : mesh.nx;
        Eigen::VectorXcd rhs(mesh.points());
        for (int j = 0; j < J; ++j) {
            const double w = std::pow(mesh.y[j], red.s1);
            for (int i = 0; i < nxl; ++i) {
                const int idx = mesh.dim_x == 0 ? j : mesh.index(i, j);
                if (j == J - 1 || (j == 0 && bc_row0))
                    rhs(idx) = 0.0;
                else
                    rhs(idx) = w * f.values(idx) * row_scale(idx);
            }
        }
        return rhs;
    }

    GridFunction from_system(const Eigen::VectorXcd& w) const {
        GridFunction u = GridFunction::zero(mesh, space_orig.m, space_orig.p);
        const int J = mesh.ny;
        const int nxl = mesh.dim_x == 0 ? 1 : mesh.nx;
        for (int j = 0; j < J; ++j) {
            const double f = std::pow(mesh.y[j], -red.s1);
            for (int i = 0; i < nxl; ++i) {
                const int idx = mesh.dim_x == 0 ? j : mesh.index(i, j);
                u.values(idx) = f * w(idx);
            }
        }
        return u;
    }

    GridFunction solve(const GridFunction& f, SolveInfo* info) const {
        const auto t0 = std::chrono::steady_clock::now();
        const Eigen::VectorXcd rhs = to_system_rhs(f);
        Eigen::VectorXcd w = lu->solve(rhs);
        if (lu->info() != Eigen::Success)
            throw std::runtime_error("linear solve failed");
        // one step of iterative refinement keeps the residual at rounding
        // level independently of the mesh-induced matrix scale
        w += lu->solve(rhs - M * w);
        const double rhs_max = std::max(rhs.cwiseAbs().maxCoeff(), 1e-300);
        const double res = (M * w - rhs).cwiseAbs().maxCoeff() / rhs_max;
        if (res > 1e-10)
            throw std::runtime_error("discrete residual exceeds 1e-10 of the data");
        if (info) {
            info->residual = res;
            info->unknowns = static_cast<int>(rhs.size());
            info->assemble_seconds = assemble_seconds + factor_seconds;
            info->solve_seconds = seconds_since(t0);
        }
        return from_system(w);
    }
};

// boundary row weights: y1^{c/g} ( y1^{beta_alpha} d . Dx + c Dy ) w = 0,
// normalized; plain first derivative when the combination degenerates.
void add_boundary_row(std::vector<Triplet>& trip, const GradedMesh& mesh,
                      const OperatorParams& red, int i, int nxl) {
    const int j = 0;
    const double a = mesh.y[1] - mesh.y[0];
    const double b2 = mesh.y[2] - mesh.y[0];
    const Stencil3 d1 = d1_forward(a, b2);
    const double cg = red.c / red.gamma;
    const double scale = std::pow(mesh.y[0], cg);
    const bool have_drift = red.dim_x > 0 && red.d.cwiseAbs().maxCoeff() > 0.0;
    const double ceff = (red.c == 0.0 && !have_drift) ? 1.0 : red.c;

    std::vector<std::pair<int, cd>> row;
    auto idx = [&](int ii, int jj) {
        return mesh.dim_x == 0 ? jj : mesh.index(ii, jj);
    };
    row.push_back({idx(i, j), scale * ceff * d1.c0});
    row.push_back({idx(i, j + 1), scale * ceff * d1.c1});
    row.push_back({idx(i, j + 2), scale * ceff * d1.c2});
    if (have_drift) {
        const double wmix = std::pow(mesh.y[0], red.beta_alpha());
        const double dx = mesh.dx();
        const int ip = (i + 1) % nxl, im = (i + nxl - 1) % nxl;
        row.push_back({idx(ip, j), scale * wmix * red.d(0) / (2.0 * dx)});
        row.push_back({idx(im, j), -scale * wmix * red.d(0) / (2.0 * dx)});
    }
    double mx = 0.0;
    for (const auto& e : row) mx = std::max(mx, std::abs(e.second));
    for (const auto& e : row) trip.emplace_back(idx(i, j), e.first, e.second / mx);
}

std::unique_ptr<AssembledSystem> assemble(const OperatorParams& params,
                                          const SpaceParams& space,
                                          const BoundaryCondition& bc, cd lambda,
                                          const GradedMesh& mesh) {
    check_lambda(lambda);
    auto sys = std::make_unique<AssembledSystem>();
    const auto t0 = std::chrono::steady_clock::now();
    sys->mesh = mesh;
    sys->red = reduce_potential(params, space, bc);
    sys->space_orig = space;
    sys->lambda = lambda;
    sys->bc_row0 = boundary_row_needed(sys->red.params, sys->red.space);

    const OperatorParams& rp = sys->red.params;
    const int J = mesh.ny;
    const int nxl = mesh.dim_x == 0 ? 1 : mesh.nx;
    const double dx = mesh.dim_x == 0 ? 1.0 : mesh.dx();
    const double amid = 0.5 * (rp.alpha1 + rp.alpha2);
    const double Q0 = rp.dim_x > 0 ? rp.Q(0, 0) : 0.0;
    const double q0 = rp.dim_x > 0 ? rp.q(0) : 0.0;
    const double d0 = rp.dim_x > 0 ? rp.d(0) : 0.0;

    std::vector<Triplet> trip;
    trip.reserve(static_cast<size_t>(mesh.points()) * 12);

    auto idx = [&](int ii, int jj) {
        int w = ii % nxl;
        if (w < 0) w += nxl;
        return mesh.dim_x == 0 ? jj : mesh.index(w, jj);
    };

    for (int j = 0; j < J; ++j) {
        if (j == J - 1) {
            for (int i = 0; i < nxl; ++i) trip.emplace_back(idx(i, j), idx(i, j), 1.0);
            continue;
        }
        if (j == 0 && sys->bc_row0) {
            for (int i = 0; i < nxl; ++i) add_boundary_row(trip, mesh, rp, i, nxl);
            continue;
        }
        const double y = mesh.y[j];
        Stencil3 s1, s2;
        int jm, j0, jp;  // column indices of the three y-stencil nodes
        if (j == 0) {
            const double a = mesh.y[1] - mesh.y[0];
            const double b2 = mesh.y[2] - mesh.y[0];
            s1 = d1_forward(a, b2);
            s2 = d2_forward(a, b2);
            jm = 0, j0 = 1, jp = 2;
        } else {
            s1 = d1_centered(y - mesh.y[j - 1], mesh.y[j + 1] - y);
            s2 = d2_centered(y - mesh.y[j - 1], mesh.y[j + 1] - y);
            jm = j - 1, j0 = j, jp = j + 1;
        }
        const double wyy = rp.gamma * std::pow(y, rp.alpha2);
        const double wy = rp.c * std::pow(y, rp.alpha2 - 1.0);
        const double w0 = -rp.b * std::pow(y, rp.alpha2 - 2.0);
        const double wxx = Q0 * std::pow(y, rp.alpha1);
        const double wx = d0 * std::pow(y, amid - 1.0);
        const double wmix = 2.0 * q0 * std::pow(y, amid);

        for (int i = 0; i < nxl; ++i) {
            const int r = idx(i, j);
            // lambda - L: diagonal part
            trip.emplace_back(r, r, lambda - cd(w0));
            // gamma y^{a2} Dyy + c y^{a2-1} Dy
            trip.emplace_back(r, idx(i, jm), -cd(wyy * s2.c0 + wy * s1.c0));
            trip.emplace_back(r, idx(i, j0), -cd(wyy * s2.c1 + wy * s1.c1));
            trip.emplace_back(r, idx(i, jp), -cd(wyy * s2.c2 + wy * s1.c2));
            if (mesh.dim_x == 0) continue;
            // Q y^{a1} Dxx and d y^{amid-1} Dx
            trip.emplace_back(r, idx(i + 1, j), -cd(wxx / (dx * dx) + wx / (2.0 * dx)));
            trip.emplace_back(r, idx(i - 1, j), -cd(wxx / (dx * dx) - wx / (2.0 * dx)));
            trip.emplace_back(r, r, cd(2.0 * wxx / (dx * dx)));
            // 2 q y^{amid} Dx Dy: centered x of the y-stencil
            if (q0 != 0.0) {
                const double cx = wmix / (2.0 * dx);
                trip.emplace_back(r, idx(i + 1, jm), -cd(cx * s1.c0));
                trip.emplace_back(r, idx(i + 1, j0), -cd(cx * s1.c1));
                trip.emplace_back(r, idx(i + 1, jp), -cd(cx * s1.c2));
                trip.emplace_back(r, idx(i - 1, jm), cd(cx * s1.c0));
                trip.emplace_back(r, idx(i - 1, j0), cd(cx * s1.c1));
                trip.emplace_back(r, idx(i - 1, jp), cd(cx * s1.c2));
            }
        }
    }

    sys->M.resize(mesh.points(), mesh.points());
    sys->M.setFromTriplets(trip.begin(), trip.end());
    sys->M.makeCompressed();
    // row equilibration
    sys->row_scale = Eigen::VectorXd::Zero(mesh.points());
    for (int k = 0; k < sys->M.outerSize(); ++k)
        for (SparseC::InnerIterator it(sys->M, k); it; ++it)
            sys->row_scale(it.row()) =
                std::max(sys->row_scale(it.row()), std::abs(it.value()));
    sys->row_scale = sys->row_scale.cwiseMax(1e-300).cwiseInverse();
    for (int k = 0; k < sys->M.outerSize(); ++k)
        for (SparseC::InnerIterator it(sys->M, k); it; ++it)
            it.valueRef() *= sys->row_scale(it.row());
    sys->assemble_seconds = seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    sys->lu = std::make_unique<Eigen::SparseLU<SparseC>>();
    sys->lu->compute(sys->M);
    if (sys->lu->info() != Eigen::Success)
        throw std::runtime_error("sparse factorization failed (singular system?)");
    sys->factor_seconds = seconds_since(t1);
    return sys;
}

void check_generates(const OperatorParams& params, const SpaceParams& space,
                     const BoundaryCondition& bc) {
    const GenerationReport report = check_generation(params, space, bc);
    if (!report.generates) {
        std::string msg = "configuration does not generate:";
        for (const auto& r : report.reasons) msg += " " + r;
        throw NotGeneratingError(msg);
    }
}

}  // namespace

GridFunction solve_resolvent_1d(const ResolventProblem& problem, SolveInfo* info) {
    if (problem.mesh.dim_x != 0)
        throw std::invalid_argument("solve_resolvent_1d requires a half-line mesh");
    check_generates(problem.params, problem.space, problem.bc);
    auto sys = assemble(problem.params, problem.space, problem.bc, problem.lambda,
                        problem.mesh);
    return sys->solve(problem.rhs, info);
}

GridFunction solve_resolvent_2d(const ResolventProblem& problem, SolveInfo* info) {
    if (problem.mesh.dim_x != 1)
        throw std::invalid_argument("solve_resolvent_2d requires a half-plane mesh");
    check_generates(problem.params, problem.space, problem.bc);
    auto sys = assemble(problem.params, problem.space, problem.bc, problem.lambda,
                        problem.mesh);
    return sys->solve(problem.rhs, info);
}

GridFunction solve_mode(const ModeOperator& op, const SpaceParams& space, cd lambda,
                        const GridFunction& rhs, SolveInfo* info) {
    check_lambda(lambda);
    if (rhs.mesh.dim_x != 0)
        throw std::invalid_argument("solve_mode expects a half-line column");
    const GradedMesh& mesh = rhs.mesh;
    const int J = mesh.ny;
    ColumnCoeffs col;
    col.a1 = col.a2 = op.alpha;
    col.gamma = op.gamma;
    col.c = op.c;
    col.mix = cd(0.0, 2.0 * op.q_coupling);
    col.qxx = op.qxx;

    OperatorParams fake;  // regime/boundary data for the column
    fake.dim_x = 0;
    fake.alpha1 = fake.alpha2 = op.alpha;
    fake.gamma = op.gamma;
    fake.c = op.c;
    const bool bc_row = boundary_row_needed(fake, space);

    std::vector<Triplet> trip;
    for (int j = 0; j < J; ++j) {
        if (j == J - 1) {
            trip.emplace_back(j, j, 1.0);
            continue;
        }
        if (j == 0 && bc_row) {
            const double a = mesh.y[1] - mesh.y[0];
            const double b2 = mesh.y[2] - mesh.y[0];
            const Stencil3 d1 = d1_forward(a, b2);
            const double mx = std::max({std::abs(d1.c0), std::abs(d1.c1), std::abs(d1.c2)});
            trip.emplace_back(0, 0, d1.c0 / mx);
            trip.emplace_back(0, 1, d1.c1 / mx);
            trip.emplace_back(0, 2, d1.c2 / mx);
            continue;
        }
        Stencil3 s1, s2;
        int jm, j0, jp;
        if (j == 0) {
            const double a = mesh.y[1] - mesh.y[0];
            const double b2 = mesh.y[2] - mesh.y[0];
            s1 = d1_forward(a, b2);
            s2 = d2_forward(a, b2);
            jm = 0, j0 = 1, jp = 2;
        } else {
            s1 = d1_centered(mesh.y[j] - mesh.y[j - 1], mesh.y[j + 1] - mesh.y[j]);
            s2 = d2_centered(mesh.y[j] - mesh.y[j - 1], mesh.y[j + 1] - mesh.y[j]);
            jm = j - 1, j0 = j, jp = j + 1;
        }
        const double y = mesh.y[j];
        const cd A = col.A(y), B = col.B(y), C = col.C(y);
        trip.emplace_back(j, j, lambda - C);
        trip.emplace_back(j, jm, -(A * s2.c0 + B * s1.c0));
        trip.emplace_back(j, j0, -(A * s2.c1 + B * s1.c1));
        trip.emplace_back(j, jp, -(A * s2.c2 + B * s1.c2));
    }
    SparseC M(J, J);
    M.setFromTriplets(trip.begin(), trip.end());
    M.makeCompressed();
    Eigen::SparseLU<SparseC> lu(M);
    if (lu.info() != Eigen::Success) throw std::runtime_error("mode solve: singular");
    Eigen::VectorXcd rhsv = rhs.values;
    if (bc_row) rhsv(0) = 0.0;
    rhsv(J - 1) = 0.0;
    Eigen::VectorXcd w = lu.solve(rhsv);
    w += lu.solve(rhsv - M * w);
    const double rmax = std::max(rhsv.cwiseAbs().maxCoeff(), 1e-300);
    const double res = (M * w - rhsv).cwiseAbs().maxCoeff() / rmax;
    if (info) {
        info->residual = res;
        info->unknowns = J;
    }
    GridFunction out = rhs;
    out.values = w;
    return out;
}

GridFunction solve_canonical_modes(const ResolventProblem& problem, SolveInfo* info) {
    const OperatorParams& p = problem.params;
    if (problem.mesh.dim_x != 1)
        throw std::invalid_argument("mode path requires a half-plane mesh");
    if (!p.equal_exponents() || p.b != 0.0 ||
        (p.dim_x > 0 && p.d.cwiseAbs().maxCoeff() != 0.0))
        throw std::invalid_argument("mode path requires the canonical form");
    check_generates(p, problem.space, problem.bc);

    const GradedMesh& mesh = problem.mesh;
    const int nx = mesh.nx, J = mesh.ny;
    // forward transform of every row
    std::vector<std::vector<cd>> hat(J, std::vector<cd>(nx));
    for (int j = 0; j < J; ++j) {
        for (int i = 0; i < nx; ++i) hat[j][i] = problem.rhs.at(i, j);
        dft(hat[j], false);
    }
    GridFunction out = GridFunction::zero(mesh, problem.space.m, problem.space.p);
    const GradedMesh column = GradedMesh::half_line(J, mesh.y_max, mesh.grading);
    double worst = 0.0;
    for (int k = 0; k < nx; ++k) {
        const int ks = k <= nx / 2 ? k : k - nx;
        const double xi = std::numbers::pi * ks / mesh.x_half;
        ModeOperator op;
        op.xi = xi;
        op.alpha = p.alpha1;
        op.gamma = p.gamma;
        op.c = p.c;
        op.q_coupling = p.q(0) * xi;
        op.qxx = p.Q(0, 0) * xi * xi;
        GridFunction rhs_col = GridFunction::zero(column, problem.space.m, problem.space.p);
        for (int j = 0; j < J; ++j) rhs_col.at(j) = hat[j][k];
        SolveInfo mi;
        const GridFunction sol = solve_mode(op, problem.space, problem.lambda, rhs_col, &mi);
        worst = std::max(worst, mi.residual);
        for (int j = 0; j < J; ++j) hat[j][k] = sol.at(j);
    }
    for (int j = 0; j < J; ++j) {
        dft(hat[j], true);
        for (int i = 0; i < nx; ++i) out.at(i, j) = hat[j][i] / static_cast<double>(nx);
    }
    if (info) {
        info->residual = worst;
        info->unknowns = nx * J;
    }
    return out;
}

GridFunction solve_via_pipeline(const ResolventProblem& problem, SolveInfo* info,
                                TransformPipeline* pipeline_out) {
    check_generates(problem.params, problem.space, problem.bc);
    const BcKind mode =
        problem.bc.kind == BcKind::dirichlet ? BcKind::dirichlet : BcKind::oblique;
    const TransformPipeline pipe =
        reduce_to_canonical(problem.params, problem.space, mode);
    if (pipeline_out) *pipeline_out = pipe;

    if (pipe.empty()) {
        // canonical already: identical to the direct solve
        return problem.mesh.dim_x == 0 ? solve_resolvent_1d(problem, info)
                                       : solve_resolvent_2d(problem, info);
    }

    GridFunction g = problem.rhs;
    g.m = problem.space.m;
    g.p = problem.space.p;
    for (const auto& stage : pipe.stages) g = apply_transform(inverse(stage.step), g);

    ResolventProblem canonical;
    canonical.params = pipe.target_params();
    canonical.space = pipe.target_space();
    canonical.bc = BoundaryCondition::neumann();
    canonical.lambda = problem.lambda;
    canonical.mesh = g.mesh;
    canonical.rhs = g;
    GridFunction u = canonical.mesh.dim_x == 0 ? solve_resolvent_1d(canonical, info)
                                               : solve_resolvent_2d(canonical, info);
    for (auto it = pipe.stages.rbegin(); it != pipe.stages.rend(); ++it)
        u = apply_transform(it->step, u);
    u.m = problem.space.m;
    u.p = problem.space.p;
    return u;
}

ParabolicResult parabolic_march(const OperatorParams& params, const SpaceParams& space,
                                const BoundaryCondition& bc, const GradedMesh& mesh,
                                const std::function<GridFunction(double)>& g, double tau,
                                int n_steps, double q_time) {
    if (tau <= 0.0 || n_steps < 1) throw std::invalid_argument("bad march parameters");
    check_generates(params, space, bc);
    auto sys = assemble(params, space, bc, cd(1.0 / tau, 0.0), mesh);

    ParabolicResult result;
    GridFunction u = GridFunction::zero(mesh, space.m, space.p);
    double dt_q = 0.0, lu_q = 0.0, g_q = 0.0;
    for (int n = 1; n <= n_steps; ++n) {
        const GridFunction gn = g(n * tau);
        GridFunction rhs = gn;
        rhs.values = u.values / tau + gn.values;
        const GridFunction next = sys->solve(rhs, nullptr);
        GridFunction diff = next;
        diff.values = (next.values - u.values) / tau;
        GridFunction lhu = next;
        lhu.values = diff.values - gn.values;  // L u^{n} from the scheme identity
        const double nd = weighted_lp_norm(diff, space.m, space.p);
        const double nl = weighted_lp_norm(lhu, space.m, space.p);
        const double ng = weighted_lp_norm(gn, space.m, space.p);
        dt_q += tau * std::pow(nd, q_time);
        lu_q += tau * std::pow(nl, q_time);
        g_q += tau * std::pow(ng, q_time);
        u = next;
        result.trajectory.push_back(next);
    }
    result.report.dt_part = std::pow(dt_q, 1.0 / q_time);
    result.report.lu_part = std::pow(lu_q, 1.0 / q_time);
    result.report.rhs_part = std::pow(g_q, 1.0 / q_time);
    if (result.report.rhs_part == 0.0) {
        result.report.degenerate = true;
        result.report.ratio = 0.0;
    } else {
        result.report.ratio =
            (result.report.dt_part + result.report.lu_part) / result.report.rhs_part;
    }
    return result;
}

SectorScan sector_scan(const OperatorParams& params, const SpaceParams& space,
                       const BoundaryCondition& bc, const GradedMesh& mesh,
                       const GridFunction& f, const std::vector<double>& magnitudes,
                       const std::vector<double>& arguments, int threads) {
    check_generates(params, space, bc);
    const double nf = weighted_lp_norm(f, space.m, space.p);
    std::vector<cd> lambdas;
    for (double arg : arguments)
        for (double mag : magnitudes)
            lambdas.emplace_back(mag * std::cos(arg), mag * std::sin(arg));

    std::vector<double> ratios(lambdas.size());
    auto run = [&](size_t a, size_t b2) {
        for (size_t k = a; k < b2; ++k) {
            auto sys = assemble(params, space, bc, lambdas[k], mesh);
            const GridFunction u = sys->solve(f, nullptr);
            ratios[k] = std::abs(lambdas[k]) * weighted_lp_norm(u, space.m, space.p) / nf;
        }
    };
    if (threads <= 1) {
        run(0, lambdas.size());
    } else {
        std::vector<std::future<void>> futures;
        const size_t chunk = (lambdas.size() + threads - 1) / threads;
        for (size_t a = 0; a < lambdas.size(); a += chunk)
            futures.push_back(std::async(std::launch::async, run, a,
                                         std::min(a + chunk, lambdas.size())));
        for (auto& f2 : futures) f2.get();
    }
    SectorScan scan;
    scan.max_ratio = 0.0;
    scan.min_ratio = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < lambdas.size(); ++k) {
        scan.samples.push_back({lambdas[k], ratios[k]});
        scan.max_ratio = std::max(scan.max_ratio, ratios[k]);
        scan.min_ratio = std::min(scan.min_ratio, ratios[k]);
    }
    return scan;
}

double calibrate_truncation(const OperatorParams& params, const SpaceParams& space,
                            const BoundaryCondition& bc, cd lambda,
                            const std::function<GridFunction(const GradedMesh&)>& rhs,
                            int ny, double grading, double y0, double tol,
                            int max_doublings) {
    double y = y0;
    double prev = -1.0;
    for (int step = 0; step <= max_doublings; ++step) {
        const GradedMesh mesh = GradedMesh::half_line(ny, y, grading);
        ResolventProblem problem{params, space, bc, lambda, mesh, rhs(mesh)};
        const GridFunction u = solve_resolvent_1d(problem);
        const double norm = weighted_lp_norm(u, space.m, space.p);
        if (prev >= 0.0 && std::abs(norm - prev) <= tol * std::max(norm, 1e-300))
            return y;
        prev = norm;
        y *= 2.0;
    }
    return y / 2.0;  // best effort; decay rates off the canonical scaling vary
}

EllipticRatios elliptic_ratios(const ResolventProblem& problem, const GridFunction& u) {
    GridFunction lu = u;
    lu.values = problem.lambda * u.values - problem.rhs.values;
    const double den = weighted_lp_norm(lu, problem.space.m, problem.space.p);
    const SobolevTermNorms n = sobolev_term_norms(u, problem.params, problem.space);
    EllipticRatios r;
    r.second_order = (n.dxx + n.dyy + n.dxdy) / den;
    r.drift = n.oblique / den;
    r.x_second = n.dxx / den;
    return r;
}

}  // namespace degenop
