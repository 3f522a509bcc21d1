#pragma once

#include <complex>

#include "degenop/mesh.hpp"
#include "degenop/smooth_function.hpp"
#include "degenop/transforms.hpp"

namespace degenop {

/// Sampled function on a graded tensor mesh, with the (m, p) metadata of the
/// ambient space it is measured in. Values are complex; real data embeds.
struct GridFunction {
    GradedMesh mesh;
    Eigen::VectorXcd values;  // size mesh.points(), x index fastest
    double m = 0.0;
    double p = 2.0;

    Complex& at(int i, int j) { return values(mesh.index(i, j)); }
    Complex at(int i, int j) const { return values(mesh.index(i, j)); }
    Complex& at(int j) { return values(j); }
    Complex at(int j) const { return values(j); }

    static GridFunction zero(const GradedMesh& mesh, double m = 0.0, double p = 2.0);
    static GridFunction sample(const SmoothFunction& u, const GradedMesh& mesh,
                               double m = 0.0, double p = 2.0);

    /// Cubic interpolation: clamped 4-point in y, periodic 4-point in x.
    /// Queries outside [y_min, y_max] clamp and count as out-of-box.
    Complex interpolate(double xq, double yq) const;
    mutable long out_of_box = 0;
};

double weighted_lp_norm(const GridFunction& u, double m, double p);
inline double weighted_lp_norm(const GridFunction& u) {
    return weighted_lp_norm(u, u.m, u.p);
}

/// Forward transform of sampled data. Kelvin steps move to the exact image
/// mesh (no y-interpolation); shear steps interpolate along x rows. The (m,p)
/// metadata follows the isometry: a function of L^p_{m'} maps to L^p_m with
/// m = m'(beta+1) - k p + beta.
GridFunction apply_transform(const TransformStep& step, const GridFunction& u);

}  // namespace degenop
