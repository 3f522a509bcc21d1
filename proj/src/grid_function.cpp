#include "degenop/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace degenop {

GridFunction GridFunction::zero(const GradedMesh& mesh, double m, double p) {
    GridFunction g;
    g.mesh = mesh;
    g.values = Eigen::VectorXcd::Zero(mesh.points());
    g.m = m;
    g.p = p;
    return g;
}

GridFunction GridFunction::sample(const SmoothFunction& u, const GradedMesh& mesh,
                                  double m, double p) {
    GridFunction g = zero(mesh, m, p);
    if (mesh.dim_x == 0) {
        Vector x0;
        for (int j = 0; j < mesh.ny; ++j) g.at(j) = u.value(x0, mesh.y[j]);
    } else {
        Vector x(1);
        for (int j = 0; j < mesh.ny; ++j)
            for (int i = 0; i < mesh.nx; ++i) {
                x(0) = mesh.x(i);
                g.at(i, j) = u.value(x, mesh.y[j]);
            }
    }
    return g;
}

namespace {

// cubic Lagrange weights for query s on nodes n[0..3]
void lagrange4(const double n[4], double s, double w[4]) {
    for (int i = 0; i < 4; ++i) {
        double v = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != i) v *= (s - n[j]) / (n[i] - n[j]);
        w[i] = v;
    }
}

}  // namespace

Complex GridFunction::interpolate(double xq, double yq) const {
    const auto& ys = mesh.y;
    const int J = mesh.ny;
    if (J < 4) throw std::invalid_argument("cubic interpolation needs ny >= 4");
    double yc = yq;
    if (yc < ys.front() || yc > ys.back()) {
        ++out_of_box;
        yc = std::clamp(yc, ys.front(), ys.back());
    }
    int j = static_cast<int>(std::upper_bound(ys.begin(), ys.end(), yc) - ys.begin()) - 1;
    j = std::clamp(j, 0, J - 2);
    int j0 = std::clamp(j - 1, 0, J - 4);
    double yn[4] = {ys[j0], ys[j0 + 1], ys[j0 + 2], ys[j0 + 3]};
    double wyv[4];
    lagrange4(yn, yc, wyv);

    if (mesh.dim_x == 0) {
        Complex v = 0.0;
        for (int a = 0; a < 4; ++a) v += wyv[a] * at(j0 + a);
        return v;
    }

    const double period = 2.0 * mesh.x_half;
    double xr = std::fmod(xq - (-mesh.x_half), period);
    if (xr < 0.0) xr += period;
    const double s = xr / mesh.dx();
    const int i1 = static_cast<int>(std::floor(s));
    const double frac = s - i1;
    double xn[4] = {-1.0, 0.0, 1.0, 2.0};
    double wxv[4];
    lagrange4(xn, frac, wxv);
    Complex v = 0.0;
    for (int a = 0; a < 4; ++a) {
        int ii = (i1 - 1 + a) % mesh.nx;
        if (ii < 0) ii += mesh.nx;
        for (int b2 = 0; b2 < 4; ++b2) v += wxv[a] * wyv[b2] * at(ii, j0 + b2);
    }
    return v;
}

double weighted_lp_norm(const GridFunction& u, double m, double p) {
    if (p < 1.0) throw std::invalid_argument("weighted_lp_norm requires p >= 1");
    if (u.values.size() != u.mesh.points())
        throw std::invalid_argument("grid values do not match the mesh");
    const auto& mesh = u.mesh;
    double sum = 0.0;
    const double wx = mesh.dim_x == 0 ? 1.0 : mesh.dx();
    for (int j = 0; j < mesh.ny; ++j) {
        const double wyj = mesh.wy[j] * std::pow(mesh.y[j], m);
        if (mesh.dim_x == 0) {
            sum += wyj * std::pow(std::abs(u.at(j)), p);
        } else {
            double row = 0.0;
            for (int i = 0; i < mesh.nx; ++i) row += std::pow(std::abs(u.at(i, j)), p);
            sum += wyj * wx * row;
        }
    }
    return std::pow(sum, 1.0 / p);
}

GridFunction apply_transform(const TransformStep& step, const GridFunction& u) {
    if (std::holds_alternative<KelvinStep>(step)) {
        const auto& st = std::get<KelvinStep>(step);
        if (st.beta == -1.0) throw std::invalid_argument("beta != -1 required");
        const double bp1 = st.beta + 1.0;
        // (T u)(y') = C y'^k u(y'^{beta+1}); image nodes y' = y^{1/(beta+1)}
        GridFunction out = u;
        out.mesh = u.mesh.power_image(1.0 / bp1);
        const double C = std::pow(std::abs(bp1), 1.0 / st.p);
        for (int j = 0; j < out.mesh.ny; ++j) {
            const double f = C * std::pow(out.mesh.y[j], st.k);
            if (u.mesh.dim_x == 0) {
                out.at(j) = f * u.at(j);
            } else {
                for (int i = 0; i < u.mesh.nx; ++i) out.at(i, j) = f * u.at(i, j);
            }
        }
        out.m = u.m * bp1 - st.k * st.p + st.beta;
        return out;
    }
    const auto& st = std::get<ShiftStep>(step);
    if (u.mesh.dim_x == 0) return u;  // shear acts on x only
    GridFunction out = u;
    for (int j = 0; j < u.mesh.ny; ++j) {
        const double offset = st.omega(0) * std::pow(u.mesh.y[j], st.beta + 1.0);
        for (int i = 0; i < u.mesh.nx; ++i)
            out.at(i, j) = u.interpolate(u.mesh.x(i) + offset, u.mesh.y[j]);
    }
    return out;
}

}  // namespace degenop
