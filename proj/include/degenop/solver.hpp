#pragma once

#include <complex>
#include <functional>
#include <optional>

#include "degenop/generation.hpp"
#include "degenop/grid_function.hpp"
#include "degenop/sobolev.hpp"

namespace degenop {

/// Thrown when a solve is requested for a non-generating configuration.
struct NotGeneratingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Resolvent problem (lambda - L) u = f on a truncated graded mesh.
/// The near-boundary row imposes the weighted derivative condition
/// y_1^{c/g} (y^{beta_alpha} d . Dx + c Dy) u = 0 unless the regime
/// (m+1)/p > 1 - alpha2 makes the boundary condition automatic, in which
/// case the equation itself is collocated one-sidedly at the first node.
/// Dirichlet problems are never discretized directly: the solve routes
/// through the substitution u = y^{-s1} w.
struct ResolventProblem {
    OperatorParams params;
    SpaceParams space;
    BoundaryCondition bc;
    Complex lambda{1.0, 0.0};
    GradedMesh mesh;
    GridFunction rhs;  // sampled forcing on `mesh`
};

struct SolveInfo {
    double residual = 0.0;       // max-norm residual of the linear system, relative
    int unknowns = 0;
    double assemble_seconds = 0.0;
    double solve_seconds = 0.0;
};

/// 1-d complex operator data for one tangential frequency of the canonical
/// form (equal exponents, b = 0, d = 0):
///   -(Q xi, xi) y^a  +  2 i (q xi) y^a Dy  +  g y^a Dyy  +  c y^{a-1} Dy.
struct ModeOperator {
    double xi = 0.0;
    double alpha = 0.0;
    double q_coupling = 0.0;  // q . xi
    double qxx = 0.0;         // (Q xi, xi)
    double gamma = 1.0;
    double c = 0.0;
};

GridFunction solve_resolvent_1d(const ResolventProblem& problem,
                                SolveInfo* info = nullptr);
GridFunction solve_mode(const ModeOperator& op, const SpaceParams& space,
                        Complex lambda, const GridFunction& rhs,
                        SolveInfo* info = nullptr);
GridFunction solve_resolvent_2d(const ResolventProblem& problem,
                                SolveInfo* info = nullptr);

/// Pulls the forcing back through the inverse reduction pipeline, solves the
/// canonical problem (same direct discretization), pushes the solution
/// forward. Identical to the direct solve when the pipeline is empty.
GridFunction solve_via_pipeline(const ResolventProblem& problem,
                                SolveInfo* info = nullptr,
                                TransformPipeline* pipeline_out = nullptr);

/// Canonical-operator solve through the x-Fourier mode path: one tridiagonal
/// complex solve per tangential frequency.
GridFunction solve_canonical_modes(const ResolventProblem& problem,
                                   SolveInfo* info = nullptr);

struct MaxRegReport {
    double ratio = 0.0;       // (l^q norms of Dt u and L u) / (l^q norm of g)
    double dt_part = 0.0;
    double lu_part = 0.0;
    double rhs_part = 0.0;
    bool degenerate = false;  // g = 0, ratio reported as 0/0
};

/// Implicit Euler march u^{n+1} = (I - tau L)^{-1}(u^n + tau g^{n+1}) from
/// u^0 = 0; returns the trajectory and the discrete parabolic-regularity
/// ratio with time norms of exponent q and space norms of L^p_m.
struct ParabolicResult {
    std::vector<GridFunction> trajectory;  // u^1 .. u^n
    MaxRegReport report;
};

ParabolicResult parabolic_march(const OperatorParams& params, const SpaceParams& space,
                                const BoundaryCondition& bc, const GradedMesh& mesh,
                                const std::function<GridFunction(double)>& g,
                                double tau, int n_steps, double q_time = 2.0);

struct SectorSample {
    Complex lambda;
    double ratio = 0.0;  // |lambda| ||R(lambda) f|| / ||f||
};

struct SectorScan {
    std::vector<SectorSample> samples;
    double max_ratio = 0.0;
    double min_ratio = 0.0;
};

SectorScan sector_scan(const OperatorParams& params, const SpaceParams& space,
                       const BoundaryCondition& bc, const GradedMesh& mesh,
                       const GridFunction& f, const std::vector<double>& magnitudes,
                       const std::vector<double>& arguments, int threads = 1);

struct EllipticRatios {
    double second_order = 0.0;  // (sum of weighted second-derivative norms) / ||Lu||
    double drift = 0.0;         // weighted drift-combination norm / ||Lu||
    double x_second = 0.0;      // ||y^{a1} Dxx u|| / ||Lu||
};

/// Ratios of the weighted derivative norms of the solved u against ||Lu||,
/// with L u = lambda u - f evaluated exactly from the solve.
EllipticRatios elliptic_ratios(const ResolventProblem& problem, const GridFunction& u);

/// Truncation calibration for the unbounded half-space: starting from y0,
/// double the box until the solution's weighted norm moves less than tol
/// relatively. The forcing is re-sampled on each candidate mesh.
double calibrate_truncation(const OperatorParams& params, const SpaceParams& space,
                            const BoundaryCondition& bc, Complex lambda,
                            const std::function<GridFunction(const GradedMesh&)>& rhs,
                            int ny, double grading, double y0 = 8.0, double tol = 1e-4,
                            int max_doublings = 5);

}  // namespace degenop
