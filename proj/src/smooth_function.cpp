#include "degenop/smooth_function.hpp"

#include <cmath>
#include <stdexcept>

namespace degenop {

namespace {

double pow_int(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

}  // namespace

TestFunction::TestFunction(int dim_x, std::vector<Term> terms)
    : SmoothFunction(dim_x), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (static_cast<int>(t.xexp.size()) != dim_x)
            throw std::invalid_argument("term exponent list does not match dim_x");
        if (t.ypow < 0 || t.decay < 0.0)
            throw std::invalid_argument("term requires ypow >= 0 and decay >= 0");
    }
    const int n = dim_x + 1;
    grad_terms_.resize(n);
    for (int a = 0; a < n; ++a) grad_terms_[a] = differentiate(terms_, a, dim_x);
    hess_terms_.resize(n);
    for (int a = 0; a < n; ++a) {
        hess_terms_[a].resize(a + 1);
        for (int b2 = 0; b2 <= a; ++b2)
            hess_terms_[a][b2] = differentiate(grad_terms_[a], b2, dim_x);
    }
}

std::vector<TestFunction::Term> TestFunction::differentiate(
    const std::vector<Term>& terms, int axis, int dim_x) {
    std::vector<Term> out;
    for (const auto& t : terms) {
        if (axis < dim_x) {
            if (t.xexp[axis] > 0) {
                Term lowered = t;
                lowered.coeff *= t.xexp[axis];
                lowered.xexp[axis] -= 1;
                out.push_back(lowered);
            }
            if (t.decay != 0.0) {
                Term raised = t;
                raised.coeff *= -2.0 * t.decay;
                raised.xexp[axis] += 1;
                out.push_back(raised);
            }
        } else {
            if (t.ypow > 0) {
                Term lowered = t;
                lowered.coeff *= t.ypow;
                lowered.ypow -= 1;
                out.push_back(lowered);
            }
            if (t.decay != 0.0) {
                Term raised = t;
                raised.coeff *= -2.0 * t.decay;
                raised.ypow += 1;
                out.push_back(raised);
            }
        }
    }
    return out;
}

double TestFunction::evaluate(const std::vector<Term>& terms, const Vector& x, double y) {
    double sum = 0.0;
    for (const auto& t : terms) {
        double v = t.coeff * pow_int(y, t.ypow);
        for (int i = 0; i < static_cast<int>(t.xexp.size()); ++i)
            v *= pow_int(x(i), t.xexp[i]);
        if (t.decay != 0.0) v *= std::exp(-t.decay * (x.squaredNorm() + y * y));
        sum += v;
    }
    return sum;
}

Jet2 TestFunction::jet(const Vector& x, double y) const {
    if (x.size() != dim_x()) throw std::invalid_argument("point dimension mismatch");
    Jet2 out(dim_x());
    out.value = evaluate(terms_, x, y);
    const int n = dim_x() + 1;
    for (int a = 0; a < n; ++a) out.grad(a) = evaluate(grad_terms_[a], x, y);
    for (int a = 0; a < n; ++a)
        for (int b2 = 0; b2 <= a; ++b2) {
            const double v = evaluate(hess_terms_[a][b2], x, y);
            out.hess(a, b2) = v;
            out.hess(b2, a) = v;
        }
    return out;
}

TestFunction TestFunction::derivative(int axis) const {
    return TestFunction(dim_x(), differentiate(terms_, axis, dim_x()));
}

TestFunction TestFunction::scaled(double factor) const {
    std::vector<Term> terms = terms_;
    for (auto& t : terms) t.coeff *= factor;
    return TestFunction(dim_x(), std::move(terms));
}

TestFunction TestFunction::plus(const TestFunction& other) const {
    if (other.dim_x() != dim_x()) throw std::invalid_argument("dim_x mismatch");
    std::vector<Term> terms = terms_;
    terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
    return TestFunction(dim_x(), std::move(terms));
}

TestFunction TestFunction::constant(int dim_x, double value) {
    Term t;
    t.coeff = value;
    t.xexp.assign(dim_x, 0);
    return TestFunction(dim_x, {t});
}

TestFunction TestFunction::monomial(int dim_x, double coeff, std::vector<int> xexp,
                                    int ypow, double decay) {
    Term t;
    t.coeff = coeff;
    t.xexp = std::move(xexp);
    t.ypow = ypow;
    t.decay = decay;
    return TestFunction(dim_x, {t});
}

TestFunction TestFunction::random(int dim_x, std::mt19937_64& rng, int n_terms) {
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_real_distribution<double> decay(0.2, 1.2);
    std::uniform_int_distribution<int> xe(0, 4);
    std::uniform_int_distribution<int> ye(0, 4);
    std::vector<Term> terms;
    for (int k = 0; k < n_terms; ++k) {
        Term t;
        t.coeff = coeff(rng);
        t.xexp.resize(dim_x);
        int total = 0;
        for (int i = 0; i < dim_x; ++i) {
            t.xexp[i] = xe(rng);
            total += t.xexp[i];
            if (total >= 4) {  // keep the x-degree <= 4 overall
                t.xexp[i] -= total - 4;
                total = 4;
            }
        }
        t.ypow = ye(rng);
        t.decay = decay(rng);
        terms.push_back(t);
    }
    return TestFunction(dim_x, std::move(terms));
}

KelvinTransformed::KelvinTransformed(SmoothFunctionPtr base, double k, double beta,
                                     double p)
    : SmoothFunction(base->dim_x()), base_(std::move(base)), k_(k), beta_(beta) {
    if (beta == -1.0) throw std::invalid_argument("kelvin map requires beta != -1");
    prefactor_ = std::pow(std::abs(beta + 1.0), 1.0 / p);
}

Jet2 KelvinTransformed::jet(const Vector& x, double y) const {
    if (y <= 0.0) throw std::domain_error("evaluation requires y > 0");
    const double eta = std::pow(y, beta_ + 1.0);
    const Jet2 in = base_->jet(x, eta);
    const int n = dim_x();
    const double yk = std::pow(y, k_);
    const double deta = (beta_ + 1.0) * std::pow(y, beta_);       // d eta / dy
    const double ddeta = (beta_ + 1.0) * beta_ * std::pow(y, beta_ - 1.0);

    Jet2 out(n);
    const double C = prefactor_;
    out.value = C * yk * in.value;
    // first derivatives of U(x,y) = u(x, eta(y))
    const double Uy = in.dy() * deta;
    const double Uyy = in.dyy() * deta * deta + in.dy() * ddeta;
    for (int i = 0; i < n; ++i) out.grad(i) = C * yk * in.grad(i);
    out.grad(n) = C * (k_ * std::pow(y, k_ - 1.0) * in.value + yk * Uy);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            out.hess(i, j) = out.hess(j, i) = C * yk * in.hess(i, j);
        }
    for (int i = 0; i < n; ++i) {
        const double v = C * (k_ * std::pow(y, k_ - 1.0) * in.grad(i) +
                              yk * in.hess(i, n) * deta);
        out.hess(i, n) = out.hess(n, i) = v;
    }
    out.hess(n, n) = C * (k_ * (k_ - 1.0) * std::pow(y, k_ - 2.0) * in.value +
                          2.0 * k_ * std::pow(y, k_ - 1.0) * Uy + yk * Uyy);
    return out;
}

ShiftTransformed::ShiftTransformed(SmoothFunctionPtr base, double beta, Vector omega)
    : SmoothFunction(base->dim_x()), base_(std::move(base)), beta_(beta),
      omega_(std::move(omega)) {
    if (beta == -1.0) throw std::invalid_argument("shear map requires beta != -1");
    if (omega_.size() != dim_x()) throw std::invalid_argument("omega length mismatch");
}

Jet2 ShiftTransformed::jet(const Vector& x, double y) const {
    if (y <= 0.0) throw std::domain_error("evaluation requires y > 0");
    const int n = dim_x();
    const double w = std::pow(y, beta_ + 1.0);
    const Jet2 in = base_->jet(x + omega_ * w, y);
    const double dw = (beta_ + 1.0) * std::pow(y, beta_);
    const double ddw = (beta_ + 1.0) * beta_ * std::pow(y, beta_ - 1.0);

    Jet2 out(n);
    out.value = in.value;
    Vector gx = in.grad.head(n);
    Matrix hxx = in.hess.topLeftCorner(n, n);
    Vector hxy = in.hess.topLeftCorner(n + 1, n + 1).col(n).head(n);
    out.grad.head(n) = gx;
    out.grad(n) = dw * gx.dot(omega_) + in.dy();
    out.hess.topLeftCorner(n, n) = hxx;
    for (int i = 0; i < n; ++i) {
        const double v = dw * (hxx.row(i).dot(omega_.transpose())) + hxy(i);
        out.hess(i, n) = out.hess(n, i) = v;
    }
    out.hess(n, n) = dw * dw * omega_.dot(hxx * omega_) + 2.0 * dw * hxy.dot(omega_) +
                     ddw * gx.dot(omega_) + in.dyy();
    return out;
}

CosineProfile::CosineProfile(double freq, double phase, TestFunction y_profile)
    : SmoothFunction(1), freq_(freq), phase_(phase), profile_(std::move(y_profile)) {
    if (profile_.dim_x() != 0)
        throw std::invalid_argument("y profile must be a half-line function");
}

Jet2 CosineProfile::jet(const Vector& x, double y) const {
    const Jet2 pj = profile_.jet(Vector(), y);
    const double s = freq_ * x(0) + phase_;
    const double cs = std::cos(s), sn = std::sin(s);
    Jet2 out(1);
    out.value = cs * pj.value;
    out.grad(0) = -freq_ * sn * pj.value;
    out.grad(1) = cs * pj.grad(0);
    out.hess(0, 0) = -freq_ * freq_ * cs * pj.value;
    out.hess(0, 1) = out.hess(1, 0) = -freq_ * sn * pj.grad(0);
    out.hess(1, 1) = cs * pj.hess(0, 0);
    return out;
}

}  // namespace degenop
