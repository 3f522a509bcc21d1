#pragma once

#include <vector>

#include "degenop/core.hpp"

namespace degenop {

/// Tensor mesh of the truncated half-space: y_j = y_max (j/ny)^grading for
/// j = 1..ny (so the boundary y = 0 is never a node), optionally crossed with
/// a uniform periodic x-grid on [-x_half, x_half). Quadrature is trapezoidal
/// in the graded coordinate t = (y/y_max)^{1/grading}, which keeps the weight
/// y^m out of the rule.
struct GradedMesh {
    int dim_x = 0;  // 0 or 1
    int ny = 0;
    double y_max = 0.0;
    double grading = 1.0;
    int nx = 0;
    double x_half = 0.0;
    std::vector<double> y;   // strictly increasing, y.front() > 0
    std::vector<double> wy;  // quadrature weights for integrals in dy

    static GradedMesh half_line(int ny, double y_max, double grading);
    static GradedMesh half_plane(int nx, double x_half, int ny, double y_max,
                                 double grading);

    int points() const { return dim_x == 0 ? ny : nx * ny; }
    int index(int i, int j) const { return j * nx + i; }
    double dx() const { return 2.0 * x_half / nx; }
    double x(int i) const { return -x_half + i * dx(); }

    /// Mesh whose nodes are y^e (image of this mesh under y -> y^e).
    GradedMesh power_image(double e) const;
    /// Same extent, ny doubled.
    GradedMesh refined() const;
};

/// Finite-difference weights on three consecutive nodes.
struct Stencil3 {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
};

Stencil3 d1_centered(double h1, double h2);  // nodes (j-1, j, j+1)
Stencil3 d2_centered(double h1, double h2);
Stencil3 d1_forward(double a, double b);  // nodes (j, j+1, j+2), offsets a < b
Stencil3 d2_forward(double a, double b);
Stencil3 d1_backward(double a, double b);  // nodes (j, j-1, j-2), offsets -a, -b

}  // namespace degenop
