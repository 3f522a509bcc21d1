#pragma once

#include <optional>

#include "degenop/grid_function.hpp"

namespace degenop {

/// One weighted norm per term of the second-order space attached to the
/// operator; x-entries are zero for half-line data.
struct SobolevTermNorms {
    double u = 0.0;      // ||u||
    double dxx = 0.0;    // ||y^{a1} Dxx u||
    double dx = 0.0;     // ||y^{a1/2} Dx u||
    double dyy = 0.0;    // ||y^{a2} Dyy u||
    double dy = 0.0;     // ||y^{a2/2} Dy u||
    double dxdy = 0.0;   // ||y^{(a1+a2)/2} Dx Dy u||
    double neumann = 0.0;  // ||y^{a2-1} Dy u||
    double oblique = 0.0;  // ||y^{(a1+a2)/2-1} d.Dx u + c y^{a2-1} Dy u||
    double rellich = 0.0;  // ||y^{a2-2} u||
};

/// All nine first/second derivative grids of u, by centered differences on
/// the graded mesh (one-sided at the ends, periodic in x).
struct DerivativeGrids {
    GridFunction dy, dyy;
    std::optional<GridFunction> dx, dxx, dxdy;
};

DerivativeGrids differentiate(const GridFunction& u);

SobolevTermNorms sobolev_term_norms(const GridFunction& u, const OperatorParams& params,
                                    const SpaceParams& space);

/// Same norms with exact derivatives of a smooth function, quadratured on the
/// given mesh.
SobolevTermNorms sobolev_term_norms(const SmoothFunction& u, const GradedMesh& mesh,
                                    const OperatorParams& params,
                                    const SpaceParams& space);

enum class TermTrend { converged, growing, inconclusive };

struct MembershipTerm {
    std::string name;
    std::vector<double> norms;  // one per refinement level
    TermTrend trend = TermTrend::inconclusive;
};

struct MembershipReport {
    std::vector<MembershipTerm> terms;
    bool all_converged() const;
};

/// Refinement-stability proxy for membership: norms on ny, 2 ny, 4 ny, ...
/// A term converges when the last two levels are within 1e-3 relative; it is
/// growing when each refinement at least doubles it.
MembershipReport membership_probe(const SmoothFunction& u, const GradedMesh& base,
                                  const OperatorParams& params, const SpaceParams& space,
                                  int levels = 3);

struct TraceEstimate {
    double limit = 0.0;      // extrapolated value of y^sigma u as y -> 0
    double confidence = 0.0; // spread of the band estimates (smaller is better)
    bool low_confidence = false;
};

/// Richardson-type extrapolation of y^sigma u(y) over the three innermost
/// node bands. For plane data the column with the largest |limit| is
/// reported.
TraceEstimate boundary_trace(const GridFunction& u, double sigma);

}  // namespace degenop
