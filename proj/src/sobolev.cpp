#include "degenop/sobolev.hpp"

#include <cmath>
#include <stdexcept>

namespace degenop {

namespace {

// y-derivative of one x-column via 3-point stencils
void column_derivatives(const GradedMesh& mesh, const std::vector<Complex>& col,
                        std::vector<Complex>& d1, std::vector<Complex>& d2) {
    const int J = mesh.ny;
    d1.assign(J, 0.0);
    d2.assign(J, 0.0);
    for (int j = 1; j + 1 < J; ++j) {
        const double h1 = mesh.y[j] - mesh.y[j - 1];
        const double h2 = mesh.y[j + 1] - mesh.y[j];
        const Stencil3 s1 = d1_centered(h1, h2);
        const Stencil3 s2 = d2_centered(h1, h2);
        d1[j] = s1.c0 * col[j - 1] + s1.c1 * col[j] + s1.c2 * col[j + 1];
        d2[j] = s2.c0 * col[j - 1] + s2.c1 * col[j] + s2.c2 * col[j + 1];
    }
    {
        const double a = mesh.y[1] - mesh.y[0];
        const double b = mesh.y[2] - mesh.y[0];
        const Stencil3 s1 = d1_forward(a, b);
        const Stencil3 s2 = d2_forward(a, b);
        d1[0] = s1.c0 * col[0] + s1.c1 * col[1] + s1.c2 * col[2];
        d2[0] = s2.c0 * col[0] + s2.c1 * col[1] + s2.c2 * col[2];
    }
    {
        const double a = mesh.y[J - 1] - mesh.y[J - 2];
        const double b = mesh.y[J - 1] - mesh.y[J - 3];
        const Stencil3 s1 = d1_backward(a, b);
        const Stencil3 s2 = d2_forward(a, b);  // symmetric weights
        d1[J - 1] = s1.c0 * col[J - 1] + s1.c1 * col[J - 2] + s1.c2 * col[J - 3];
        d2[J - 1] = s2.c0 * col[J - 1] + s2.c1 * col[J - 2] + s2.c2 * col[J - 3];
    }
}

double weighted_norm_of(const GradedMesh& mesh, const Eigen::VectorXcd& vals,
                        double weight_exp, double m, double p) {
    GridFunction g;
    g.mesh = mesh;
    g.values = vals;
    double sum = 0.0;
    const double wx = mesh.dim_x == 0 ? 1.0 : mesh.dx();
    for (int j = 0; j < mesh.ny; ++j) {
        const double w = mesh.wy[j] * std::pow(mesh.y[j], m + weight_exp * p);
        if (mesh.dim_x == 0) {
            sum += w * std::pow(std::abs(vals(j)), p);
        } else {
            double row = 0.0;
            for (int i = 0; i < mesh.nx; ++i)
                row += std::pow(std::abs(vals(mesh.index(i, j))), p);
            sum += w * wx * row;
        }
    }
    return std::pow(sum, 1.0 / p);
}

}  // namespace

DerivativeGrids differentiate(const GridFunction& u) {
    const GradedMesh& mesh = u.mesh;
    DerivativeGrids out{GridFunction::zero(mesh, u.m, u.p),
                        GridFunction::zero(mesh, u.m, u.p), std::nullopt, std::nullopt,
                        std::nullopt};
    const int J = mesh.ny;
    if (mesh.dim_x == 0) {
        std::vector<Complex> col(J), d1, d2;
        for (int j = 0; j < J; ++j) col[j] = u.at(j);
        column_derivatives(mesh, col, d1, d2);
        for (int j = 0; j < J; ++j) {
            out.dy.at(j) = d1[j];
            out.dyy.at(j) = d2[j];
        }
        return out;
    }
    const int nx = mesh.nx;
    out.dx = GridFunction::zero(mesh, u.m, u.p);
    out.dxx = GridFunction::zero(mesh, u.m, u.p);
    out.dxdy = GridFunction::zero(mesh, u.m, u.p);
    std::vector<Complex> col(J), d1, d2;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < J; ++j) col[j] = u.at(i, j);
        column_derivatives(mesh, col, d1, d2);
        for (int j = 0; j < J; ++j) {
            out.dy.at(i, j) = d1[j];
            out.dyy.at(i, j) = d2[j];
        }
    }
    const double dx = mesh.dx();
    for (int j = 0; j < J; ++j)
        for (int i = 0; i < nx; ++i) {
            const int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
            out.dx->at(i, j) = (u.at(ip, j) - u.at(im, j)) / (2.0 * dx);
            out.dxx->at(i, j) =
                (u.at(ip, j) - 2.0 * u.at(i, j) + u.at(im, j)) / (dx * dx);
        }
    // mixed derivative: x-difference of the y-derivative grid
    for (int j = 0; j < J; ++j)
        for (int i = 0; i < nx; ++i) {
            const int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
            out.dxdy->at(i, j) = (out.dy.at(ip, j) - out.dy.at(im, j)) / (2.0 * dx);
        }
    return out;
}

SobolevTermNorms sobolev_term_norms(const GridFunction& u, const OperatorParams& params,
                                    const SpaceParams& space) {
    const DerivativeGrids der = differentiate(u);
    const GradedMesh& mesh = u.mesh;
    const double a1 = params.alpha1, a2 = params.alpha2;
    const double amid = 0.5 * (a1 + a2);
    SobolevTermNorms out;
    out.u = weighted_norm_of(mesh, u.values, 0.0, space.m, space.p);
    out.dyy = weighted_norm_of(mesh, der.dyy.values, a2, space.m, space.p);
    out.dy = weighted_norm_of(mesh, der.dy.values, 0.5 * a2, space.m, space.p);
    out.neumann = weighted_norm_of(mesh, der.dy.values, a2 - 1.0, space.m, space.p);
    out.rellich = weighted_norm_of(mesh, u.values, a2 - 2.0, space.m, space.p);
    if (mesh.dim_x > 0) {
        out.dxx = weighted_norm_of(mesh, der.dxx->values, a1, space.m, space.p);
        out.dx = weighted_norm_of(mesh, der.dx->values, 0.5 * a1, space.m, space.p);
        out.dxdy = weighted_norm_of(mesh, der.dxdy->values, amid, space.m, space.p);
        Eigen::VectorXcd combo(mesh.points());
        for (int j = 0; j < mesh.ny; ++j) {
            const double wmix = std::pow(mesh.y[j], amid - a2);  // relative to y^{a2-1}
            for (int i = 0; i < mesh.nx; ++i) {
                const int idx = mesh.index(i, j);
                combo(idx) = params.d(0) * wmix * der.dx->values(idx) +
                             params.c * der.dy.values(idx);
            }
        }
        out.oblique = weighted_norm_of(mesh, combo, a2 - 1.0, space.m, space.p);
    } else {
        out.oblique = params.c == 0.0 ? out.neumann
                                      : std::abs(params.c) * out.neumann;
    }
    return out;
}

SobolevTermNorms sobolev_term_norms(const SmoothFunction& u, const GradedMesh& mesh,
                                    const OperatorParams& params,
                                    const SpaceParams& space) {
    const int n = mesh.dim_x;
    const int total = mesh.points();
    Eigen::VectorXcd vu(total), vdy(total), vdyy(total), vdx(total), vdxx(total),
        vdxdy(total), vob(total);
    const double a1 = params.alpha1, a2 = params.alpha2;
    const double amid = 0.5 * (a1 + a2);
    Vector x(n);
    for (int j = 0; j < mesh.ny; ++j) {
        const double y = mesh.y[j];
        const int ni = n == 0 ? 1 : mesh.nx;
        for (int i = 0; i < ni; ++i) {
            if (n > 0) x(0) = mesh.x(i);
            const Jet2 jet = u.jet(x, y);
            const int idx = n == 0 ? j : mesh.index(i, j);
            vu(idx) = jet.value;
            vdy(idx) = jet.dy();
            vdyy(idx) = jet.dyy();
            if (n > 0) {
                vdx(idx) = jet.grad(0);
                vdxx(idx) = jet.hess(0, 0);
                vdxdy(idx) = jet.hess(0, 1);
                vob(idx) = params.d(0) * std::pow(y, amid - a2) * jet.grad(0) +
                           params.c * jet.dy();
            }
        }
    }
    SobolevTermNorms out;
    out.u = weighted_norm_of(mesh, vu, 0.0, space.m, space.p);
    out.dy = weighted_norm_of(mesh, vdy, 0.5 * a2, space.m, space.p);
    out.dyy = weighted_norm_of(mesh, vdyy, a2, space.m, space.p);
    out.neumann = weighted_norm_of(mesh, vdy, a2 - 1.0, space.m, space.p);
    out.rellich = weighted_norm_of(mesh, vu, a2 - 2.0, space.m, space.p);
    if (n > 0) {
        out.dx = weighted_norm_of(mesh, vdx, 0.5 * a1, space.m, space.p);
        out.dxx = weighted_norm_of(mesh, vdxx, a1, space.m, space.p);
        out.dxdy = weighted_norm_of(mesh, vdxdy, amid, space.m, space.p);
        out.oblique = weighted_norm_of(mesh, vob, a2 - 1.0, space.m, space.p);
    } else {
        out.oblique = std::abs(params.c) * out.neumann;
    }
    return out;
}

bool MembershipReport::all_converged() const {
    for (const auto& t : terms)
        if (t.trend != TermTrend::converged) return false;
    return true;
}

MembershipReport membership_probe(const SmoothFunction& u, const GradedMesh& base,
                                  const OperatorParams& params, const SpaceParams& space,
                                  int levels) {
    MembershipReport report;
    // boundary scan: ny doubles at fixed box (resolves y -> 0); tail scan:
    // box and ny double together (and the first node still shrinks)
    std::vector<SobolevTermNorms> all, tail;
    GradedMesh mesh = base;
    GradedMesh wide = base;
    for (int l = 0; l < levels; ++l) {
        all.push_back(sobolev_term_norms(u, mesh, params, space));
        tail.push_back(sobolev_term_norms(u, wide, params, space));
        if (l + 1 < levels) {
            mesh = mesh.refined();
            wide = wide.dim_x == 0
                       ? GradedMesh::half_line(2 * wide.ny, 2.0 * wide.y_max,
                                               wide.grading)
                       : GradedMesh::half_plane(wide.nx, wide.x_half, 2 * wide.ny,
                                                2.0 * wide.y_max, wide.grading);
        }
    }
    auto push = [&](const std::string& name, auto pick) {
        MembershipTerm term;
        term.name = name;
        for (const auto& n : all) term.norms.push_back(pick(n));
        std::vector<double> tails;
        for (const auto& n : tail) tails.push_back(pick(n));
        const double last = term.norms.back();
        const double prev = term.norms[term.norms.size() - 2];
        bool growing = true;
        for (size_t i = 1; i < term.norms.size(); ++i)
            growing = growing && (term.norms[i] >= 2.0 * term.norms[i - 1] ||
                                  tails[i] >= 2.0 * tails[i - 1]);
        const bool tail_settled =
            std::abs(tails.back() - tails[tails.size() - 2]) <=
            1e-3 * std::max(tails.back(), 1e-300);
        if (growing)
            term.trend = TermTrend::growing;
        else if (std::abs(last - prev) <= 1e-3 * std::max(last, 1e-300) && tail_settled)
            term.trend = TermTrend::converged;
        report.terms.push_back(term);
    };
    push("u", [](const SobolevTermNorms& n) { return n.u; });
    push("dy", [](const SobolevTermNorms& n) { return n.dy; });
    push("dyy", [](const SobolevTermNorms& n) { return n.dyy; });
    push("neumann", [](const SobolevTermNorms& n) { return n.neumann; });
    push("rellich", [](const SobolevTermNorms& n) { return n.rellich; });
    if (base.dim_x > 0) {
        push("dx", [](const SobolevTermNorms& n) { return n.dx; });
        push("dxx", [](const SobolevTermNorms& n) { return n.dxx; });
        push("dxdy", [](const SobolevTermNorms& n) { return n.dxdy; });
        push("oblique", [](const SobolevTermNorms& n) { return n.oblique; });
    }
    return report;
}

namespace {

// extrapolation of one band (nodes a < b < c with values va, vb, vc) under the
// model v(j) = limit + C j^theta, the exact form of y^sigma-weighted powers on
// a graded mesh; falls back to the innermost value for stalled differences
double power_fit(double a, double b, double c, double va, double vb, double vc) {
    const double d1 = vb - va, d2 = vc - vb;
    const double scale = std::abs(va) + std::abs(vb) + std::abs(vc);
    if (std::abs(d1) <= 1e-13 * (scale + 1e-300)) return va;
    const double q = d2 / d1;
    auto growth = [&](double theta) {
        return (std::pow(c, theta) - std::pow(b, theta)) /
               (std::pow(b, theta) - std::pow(a, theta));
    };
    double lo = 0.02, hi = 8.0;
    if (!(q > growth(lo) && q < growth(hi))) {
        const double dd = d2 - d1;  // Aitken fallback
        if (std::abs(dd) <= 1e-12 * (scale + 1e-300)) return va;
        return va - d1 * d1 / dd;
    }
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (growth(mid) < q ? lo : hi) = mid;
    }
    const double theta = 0.5 * (lo + hi);
    const double C = d1 / (std::pow(b, theta) - std::pow(a, theta));
    return va - C * std::pow(a, theta);
}

TraceEstimate trace_of_column(const std::vector<double>& v) {
    TraceEstimate est;
    double bands[3];
    for (int b = 0; b < 3; ++b)
        bands[b] = power_fit(b + 1, b + 2, b + 3, v[b], v[b + 1], v[b + 2]);
    est.limit = bands[0];
    est.confidence =
        std::max(std::abs(bands[0] - bands[1]), std::abs(bands[1] - bands[2]));
    // raw values drifting non-monotonically across the five inner nodes mark
    // the extrapolation as unreliable
    bool inc = true, dec = true;
    for (int j = 0; j < 4; ++j) {
        inc = inc && v[j] <= v[j + 1] + 1e-14;
        dec = dec && v[j] >= v[j + 1] - 1e-14;
    }
    est.low_confidence = !(inc || dec);
    return est;
}

}  // namespace

TraceEstimate boundary_trace(const GridFunction& u, double sigma) {
    const GradedMesh& mesh = u.mesh;
    if (mesh.ny < 5) throw std::invalid_argument("boundary_trace needs ny >= 5");
    std::vector<double> v(5);
    if (mesh.dim_x == 0) {
        for (int j = 0; j < 5; ++j)
            v[j] = std::pow(mesh.y[j], sigma) * std::real(u.at(j));
        return trace_of_column(v);
    }
    TraceEstimate best;
    double best_abs = -1.0;
    for (int i = 0; i < mesh.nx; ++i) {
        for (int j = 0; j < 5; ++j)
            v[j] = std::pow(mesh.y[j], sigma) * std::real(u.at(i, j));
        const TraceEstimate est = trace_of_column(v);
        if (std::abs(est.limit) > best_abs) {
            best_abs = std::abs(est.limit);
            best = est;
        }
    }
    return best;
}

}  // namespace degenop
