#include "degenop/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace degenop {

namespace {

void fill_nodes(GradedMesh& mesh) {
    const int J = mesh.ny;
    mesh.y.resize(J);
    mesh.wy.resize(J);
    std::vector<double> t(J);
    for (int j = 0; j < J; ++j) {
        t[j] = static_cast<double>(j + 1) / J;
        mesh.y[j] = mesh.y_max * std::pow(t[j], mesh.grading);
    }
    for (int j = 1; j < J; ++j)
        if (!(mesh.y[j] > mesh.y[j - 1]))
            throw std::invalid_argument("mesh nodes must be strictly increasing");
    // trapezoid in t; the segment [0, t_1] contributes with integrand value 0
    // taken at t = 0 (the weighted integrand vanishes there for convergent
    // integrals)
    for (int j = 0; j < J; ++j) {
        const double left = (j == 0) ? 0.0 : t[j - 1];
        const double right = (j == J - 1) ? t[j] : t[j + 1];
        const double wt = 0.5 * (right - left);
        const double jac = mesh.y_max * mesh.grading * std::pow(t[j], mesh.grading - 1.0);
        mesh.wy[j] = wt * jac;
    }
}

}  // namespace

GradedMesh GradedMesh::half_line(int ny, double y_max, double grading) {
    if (ny < 2 || y_max <= 0.0 || grading <= 0.0)
        throw std::invalid_argument("half_line requires ny >= 2, y_max > 0, grading > 0");
    GradedMesh mesh;
    mesh.dim_x = 0;
    mesh.ny = ny;
    mesh.y_max = y_max;
    mesh.grading = grading;
    fill_nodes(mesh);
    return mesh;
}

GradedMesh GradedMesh::half_plane(int nx, double x_half, int ny, double y_max,
                                  double grading) {
    if (nx < 4 || x_half <= 0.0)
        throw std::invalid_argument("half_plane requires nx >= 4 and x_half > 0");
    GradedMesh mesh = half_line(ny, y_max, grading);
    mesh.dim_x = 1;
    mesh.nx = nx;
    mesh.x_half = x_half;
    return mesh;
}

GradedMesh GradedMesh::power_image(double e) const {
    if (e <= 0.0) throw std::invalid_argument("power_image requires e > 0");
    GradedMesh mesh = *this;
    mesh.y_max = std::pow(y_max, e);
    mesh.grading = grading * e;
    fill_nodes(mesh);
    return mesh;
}

GradedMesh GradedMesh::refined() const {
    GradedMesh mesh = *this;
    mesh.ny = 2 * ny;
    fill_nodes(mesh);
    return mesh;
}

Stencil3 d1_centered(double h1, double h2) {
    return {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))};
}

Stencil3 d2_centered(double h1, double h2) {
    return {2.0 / (h1 * (h1 + h2)), -2.0 / (h1 * h2), 2.0 / (h2 * (h1 + h2))};
}

Stencil3 d1_forward(double a, double b) {
    return {-(a + b) / (a * b), b / (a * (b - a)), -a / (b * (b - a))};
}

Stencil3 d2_forward(double a, double b) {
    return {2.0 / (a * b), -2.0 / (a * (b - a)), 2.0 / (b * (b - a))};
}

Stencil3 d1_backward(double a, double b) {
    const Stencil3 f = d1_forward(a, b);
    return {-f.c0, -f.c1, -f.c2};
}

}  // namespace degenop
