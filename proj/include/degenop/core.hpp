#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace degenop {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

/// Coefficient record of the degenerate operator
///
///   L u = y^a1 Tr(Q Dxx u) + 2 y^{(a1+a2)/2} q . Dx Dy u + g y^a2 Dyy u
///       + y^{(a1+a2)/2 - 1} d . Dx u + c y^{a2-1} Dy u - b y^{a2-2} u
///
/// on the half-space {(x, y) : x in R^N, y > 0}. The full diffusion matrix
/// A = [[Q, q^t], [q, g]] must be symmetric positive definite, the exponents
/// must satisfy a2 < 2 and a2 - a1 < 2, and the indicial discriminant must be
/// nonnegative.
struct OperatorParams {
    int dim_x = 0;  // N; Q is N x N, q and d have length N
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    Matrix Q;
    Vector q;
    double gamma = 1.0;
    Vector d;
    double c = 0.0;
    double b = 0.0;

    /// Block matrix A = [[Q, q^t], [q, gamma]], size (N+1) x (N+1).
    Matrix diffusion_matrix() const;

    /// Exponent mismatch (a1 - a2)/2; zero when the exponents are equal.
    double beta_alpha() const { return 0.5 * (alpha1 - alpha2); }

    bool equal_exponents() const { return alpha1 == alpha2; }

    /// b/g + ((c/g - 1)/2)^2, the discriminant of the indicial equation.
    double discriminant() const;

    bool operator==(const OperatorParams&) const;
};

/// Ambient space L^p_m = L^p(half-space, y^m dx dy).
struct SpaceParams {
    double p = 2.0;  // must be > 1
    double m = 0.0;

    double value_mp() const { return (m + 1.0) / p; }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool admissible() const { return violations.empty(); }
};

/// Discriminant and roots of -s^2 + (c/g - 1) s + b/g = 0, ordered s1 <= s2.
struct IndicialData {
    double D = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
};

enum class BcKind { neumann, oblique, dirichlet };

struct BoundaryCondition {
    BcKind kind = BcKind::neumann;
    static BoundaryCondition neumann() { return {BcKind::neumann}; }
    static BoundaryCondition oblique() { return {BcKind::oblique}; }
    static BoundaryCondition dirichlet() { return {BcKind::dirichlet}; }
};

const char* to_string(BcKind kind);

/// Diagnostic check of every admissibility constraint; never throws.
ValidationReport validate(const OperatorParams& params);

/// Throws std::invalid_argument when the record is inadmissible.
void require_admissible(const OperatorParams& params);

/// Indicial data of the y-part; throws std::domain_error when D < 0.
IndicialData indicial_roots(const OperatorParams& params);

/// Lower bound contribution of alpha1: its negative part, with the half-line
/// convention that N = 0 contributes 0.
double alpha1_lower(const OperatorParams& params);

}  // namespace degenop
