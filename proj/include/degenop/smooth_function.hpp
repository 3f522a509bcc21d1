#pragma once

#include <memory>
#include <random>
#include <vector>

#include "degenop/core.hpp"

namespace degenop {

/// Value, gradient and Hessian of a scalar function at one point.
/// Coordinates are ordered (x_1, ..., x_N, y); y is the last index.
struct Jet2 {
    double value = 0.0;
    Vector grad;   // size N+1
    Matrix hess;   // (N+1) x (N+1), symmetric

    explicit Jet2(int dim_x = 0)
        : grad(Vector::Zero(dim_x + 1)), hess(Matrix::Zero(dim_x + 1, dim_x + 1)) {}

    double dy() const { return grad(grad.size() - 1); }
    double dyy() const { return hess(grad.size() - 1, grad.size() - 1); }
};

/// A scalar function on the half-space with exact first and second
/// derivatives. All implementations are immutable and safe to share.
class SmoothFunction {
  public:
    explicit SmoothFunction(int dim_x) : dim_x_(dim_x) {}
    virtual ~SmoothFunction() = default;

    int dim_x() const { return dim_x_; }
    virtual Jet2 jet(const Vector& x, double y) const = 0;
    double value(const Vector& x, double y) const { return jet(x, y).value; }
    double value1d(double y) const { return value(Vector(), y); }

  private:
    int dim_x_;
};

using SmoothFunctionPtr = std::shared_ptr<const SmoothFunction>;

/// Finite combinations of x-monomials times y-powers times gaussians,
///
///   u(x, y) = sum_k  c_k * prod_i x_i^{e_ki} * y^{j_k} * exp(-a_k (|x|^2 + y^2)),
///
/// closed under differentiation, so all derivatives are evaluated exactly.
class TestFunction final : public SmoothFunction {
  public:
    struct Term {
        double coeff = 1.0;
        std::vector<int> xexp;  // length N, entries >= 0
        int ypow = 0;           // >= 0
        double decay = 0.0;     // a >= 0
    };

    TestFunction(int dim_x, std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }

    /// Exact partial derivative along axis (0..N-1 for x, N for y);
    /// the result is again a TestFunction.
    TestFunction derivative(int axis) const;

    TestFunction scaled(double factor) const;
    TestFunction plus(const TestFunction& other) const;

    Jet2 jet(const Vector& x, double y) const override;

    static TestFunction constant(int dim_x, double value);
    /// Single term c * prod x_i^{e_i} * y^j * exp(-a(|x|^2+y^2)).
    static TestFunction monomial(int dim_x, double coeff, std::vector<int> xexp,
                                 int ypow, double decay);
    static TestFunction random(int dim_x, std::mt19937_64& rng, int n_terms = 3);

  private:
    std::vector<Term> terms_;
    // derivative term lists precomputed so jet() is a plain evaluation
    std::vector<std::vector<Term>> grad_terms_;              // per axis
    std::vector<std::vector<std::vector<Term>>> hess_terms_; // lower triangle

    static std::vector<Term> differentiate(const std::vector<Term>& terms, int axis,
                                           int dim_x);
    static double evaluate(const std::vector<Term>& terms, const Vector& x, double y);
};

/// Kelvin-type map (T u)(x, y) = |beta+1|^{1/p} y^k u(x, y^{beta+1}).
class KelvinTransformed final : public SmoothFunction {
  public:
    KelvinTransformed(SmoothFunctionPtr base, double k, double beta, double p);
    Jet2 jet(const Vector& x, double y) const override;

  private:
    SmoothFunctionPtr base_;
    double k_, beta_, prefactor_;
};

/// Shear map (S u)(x, y) = u(x + omega y^{beta+1}, y).
class ShiftTransformed final : public SmoothFunction {
  public:
    ShiftTransformed(SmoothFunctionPtr base, double beta, Vector omega);
    Jet2 jet(const Vector& x, double y) const override;

  private:
    SmoothFunctionPtr base_;
    double beta_;
    Vector omega_;
};

/// cos(freq * x + phase) * profile(y) on the strip; exact jets. Used for
/// manufactured solutions on the periodic x-box.
class CosineProfile final : public SmoothFunction {
  public:
    CosineProfile(double freq, double phase, TestFunction y_profile);
    Jet2 jet(const Vector& x, double y) const override;

  private:
    double freq_, phase_;
    TestFunction profile_;  // dim_x == 0
};

}  // namespace degenop
