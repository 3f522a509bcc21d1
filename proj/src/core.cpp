#include "degenop/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace degenop {

Matrix OperatorParams::diffusion_matrix() const {
    const int n = dim_x;
    Matrix A(n + 1, n + 1);
    if (n > 0) {
        A.topLeftCorner(n, n) = Q;
        A.topRightCorner(n, 1) = q;
        A.bottomLeftCorner(1, n) = q.transpose();
    }
    A(n, n) = gamma;
    return A;
}

double OperatorParams::discriminant() const {
    const double r = c / gamma;
    return b / gamma + 0.25 * (r - 1.0) * (r - 1.0);
}

bool OperatorParams::operator==(const OperatorParams& o) const {
    return dim_x == o.dim_x && alpha1 == o.alpha1 && alpha2 == o.alpha2 &&
           Q == o.Q && q == o.q && gamma == o.gamma && d == o.d && c == o.c &&
           b == o.b;
}

const char* to_string(BcKind kind) {
    switch (kind) {
        case BcKind::neumann: return "neumann";
        case BcKind::oblique: return "oblique";
        case BcKind::dirichlet: return "dirichlet";
    }
    return "?";
}

ValidationReport validate(const OperatorParams& params) {
    ValidationReport report;
    auto fail = [&](const std::string& what) { report.violations.push_back(what); };

    const int n = params.dim_x;
    if (n < 0) {
        fail("dim_x >= 0");
        return report;
    }
    if (params.Q.rows() != n || params.Q.cols() != n) fail("Q is dim_x x dim_x");
    if (params.q.size() != n) fail("q has length dim_x");
    if (params.d.size() != n) fail("d has length dim_x");
    if (!report.violations.empty()) return report;  // sizes broken, stop here

    if (!(params.gamma > 0.0)) fail("gamma > 0");
    if (n > 0 && !params.Q.isApprox(params.Q.transpose(), 1e-12)) fail("Q symmetric");

    if (params.gamma > 0.0) {
        // strict positivity with a relative floor; "positive definite" alone is
        // not checkable in floating point
        const Matrix A = params.diffusion_matrix();
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (A + A.transpose()));
        const double largest = es.eigenvalues().cwiseAbs().maxCoeff();
        if (!(es.eigenvalues().minCoeff() > 1e-10 * largest))
            fail("A = [[Q,q^t],[q,gamma]] positive definite");
    }

    if (!(params.alpha2 < 2.0)) fail("alpha2 < 2");
    if (!(params.alpha2 - params.alpha1 < 2.0)) fail("alpha2 - alpha1 < 2");
    if (params.gamma > 0.0) {
        // same rounding guard as indicial_roots: conjugated records carry
        // O(eps)-size residue around an exact zero discriminant
        const double half = 0.5 * (params.c / params.gamma - 1.0);
        const double scale = 1.0 + std::abs(params.b / params.gamma) + half * half;
        if (!(params.discriminant() >= -1e-13 * scale)) fail("D >= 0");
    }
    return report;
}

void require_admissible(const OperatorParams& params) {
    const ValidationReport report = validate(params);
    if (report.admissible()) return;
    std::ostringstream msg;
    msg << "inadmissible operator parameters:";
    for (const auto& v : report.violations) msg << " [" << v << "]";
    throw std::invalid_argument(msg.str());
}

IndicialData indicial_roots(const OperatorParams& params) {
    double D = params.discriminant();
    // snap rounding residue to the exact double root: near zero the map
    // coefficients -> sqrt(D) has unbounded condition number, so coefficient
    // records whose exact discriminant vanishes must not leak spurious roots
    const double half = 0.5 * (params.c / params.gamma - 1.0);
    const double scale = 1.0 + std::abs(params.b / params.gamma) + half * half;
    if (D < -1e-13 * scale) throw std::domain_error("indicial discriminant is negative");
    if (std::abs(D) <= 1e-13 * scale) D = 0.0;
    const double root = std::sqrt(D);
    return IndicialData{D, half - root, half + root};
}

double alpha1_lower(const OperatorParams& params) {
    if (params.dim_x == 0) return 0.0;
    return std::max(-params.alpha1, 0.0);
}

}  // namespace degenop
