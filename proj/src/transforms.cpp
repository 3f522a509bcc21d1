#include "degenop/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace degenop {

namespace {

void require_beta(double beta) {
    if (beta == -1.0) throw std::invalid_argument("transform requires beta != -1");
}

}  // namespace

KelvinStep inverse(const KelvinStep& step) {
    return KelvinStep{-step.k / (step.beta + 1.0), -step.beta / (step.beta + 1.0),
                      step.p};
}

ShiftStep inverse(const ShiftStep& step) { return ShiftStep{step.beta, -step.omega}; }

TransformStep inverse(const TransformStep& step) {
    if (std::holds_alternative<KelvinStep>(step))
        return inverse(std::get<KelvinStep>(step));
    return inverse(std::get<ShiftStep>(step));
}

double apply_operator(const OperatorParams& params, const SmoothFunction& u,
                      const Vector& x, double y) {
    if (y <= 0.0) throw std::domain_error("apply_operator requires y > 0");
    if (u.dim_x() != params.dim_x)
        throw std::invalid_argument("function dimension does not match operator");
    const int n = params.dim_x;
    const Jet2 jet = u.jet(x, y);
    const double amid = 0.5 * (params.alpha1 + params.alpha2);
    double value = params.gamma * std::pow(y, params.alpha2) * jet.dyy() +
                   params.c * std::pow(y, params.alpha2 - 1.0) * jet.dy() -
                   params.b * std::pow(y, params.alpha2 - 2.0) * jet.value;
    if (n > 0) {
        const Matrix hxx = jet.hess.topLeftCorner(n, n);
        const Vector hxy = jet.hess.col(n).head(n);
        const Vector gx = jet.grad.head(n);
        value += std::pow(y, params.alpha1) * (params.Q.array() * hxx.array()).sum();
        value += 2.0 * std::pow(y, amid) * params.q.dot(hxy);
        value += std::pow(y, amid - 1.0) * params.d.dot(gx);
    }
    return value;
}

SmoothFunctionPtr apply_transform(const TransformStep& step, SmoothFunctionPtr u) {
    if (std::holds_alternative<KelvinStep>(step)) {
        const auto& st = std::get<KelvinStep>(step);
        return std::make_shared<KelvinTransformed>(std::move(u), st.k, st.beta, st.p);
    }
    const auto& st = std::get<ShiftStep>(step);
    return std::make_shared<ShiftTransformed>(std::move(u), st.beta, st.omega);
}

double conjugated_apply(const TransformStep& step, const OperatorParams& params,
                        const SmoothFunctionPtr& u, const Vector& x, double y) {
    const SmoothFunctionPtr xu = apply_transform(step, u);
    if (std::holds_alternative<KelvinStep>(step)) {
        const auto& st = std::get<KelvinStep>(step);
        require_beta(st.beta);
        // (X^{-1} g)(x,y) = |beta+1|^{-1/p} y^{-k/(beta+1)} g(x, y^{1/(beta+1)})
        const double eta = std::pow(y, 1.0 / (st.beta + 1.0));
        const double lv = apply_operator(params, *xu, x, eta);
        const double pref = std::pow(std::abs(st.beta + 1.0), -1.0 / st.p);
        return pref * std::pow(y, -st.k / (st.beta + 1.0)) * lv;
    }
    const auto& st = std::get<ShiftStep>(step);
    require_beta(st.beta);
    const Vector back = x - st.omega * std::pow(y, st.beta + 1.0);
    return apply_operator(params, *xu, back, y);
}

std::pair<OperatorParams, SpaceParams> conjugate_by_kelvin(const OperatorParams& params,
                                                           const SpaceParams& space,
                                                           double k, double beta) {
    require_beta(beta);
    const double bp1 = beta + 1.0;
    OperatorParams out = params;
    out.alpha1 = params.alpha1 / bp1;
    out.alpha2 = (params.alpha2 + 2.0 * beta) / bp1;
    out.q = bp1 * params.q;
    out.gamma = bp1 * bp1 * params.gamma;
    out.d = 2.0 * k * params.q + params.d;
    out.c = bp1 * (params.c + (2.0 * k + beta) * params.gamma);
    out.b = params.b - k * (params.c + (k - 1.0) * params.gamma);
    SpaceParams sp = space;
    sp.m = (space.m + k * space.p - beta) / bp1;
    return {out, sp};
}

IndicialData transform_indicial(const IndicialData& ind, double k, double beta) {
    require_beta(beta);
    const double bp1 = beta + 1.0;
    IndicialData out;
    out.D = ind.D / (bp1 * bp1);
    if (bp1 > 0.0) {
        out.s1 = (ind.s1 + k) / bp1;
        out.s2 = (ind.s2 + k) / bp1;
    } else {
        out.s1 = (ind.s2 + k) / bp1;
        out.s2 = (ind.s1 + k) / bp1;
    }
    return out;
}

void TermSum::canonicalize() {
    std::vector<OperatorTerm> merged;
    for (const auto& t : terms) {
        bool found = false;
        for (auto& m : merged) {
            if (m.kind == t.kind &&
                std::abs(m.y_power - t.y_power) <= 1e-12 * (1.0 + std::abs(t.y_power))) {
                m.coeff += t.coeff;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(t);
    }
    std::erase_if(merged, [](const OperatorTerm& t) {
        return t.coeff.cwiseAbs().maxCoeff() < 1e-14;
    });
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.y_power < b.y_power;
    });
    terms = std::move(merged);
}

double TermSum::apply(const Jet2& jet, double y) const {
    const int n = dim_x;
    double value = 0.0;
    for (const auto& t : terms) {
        const double w = std::pow(y, t.y_power);
        switch (t.kind) {
            case DerivKind::Dxx:
                value += w * (t.coeff.array() * jet.hess.topLeftCorner(n, n).array()).sum();
                break;
            case DerivKind::DxDy:
                value += w * (t.coeff.col(0).dot(jet.hess.col(n).head(n)));
                break;
            case DerivKind::Dyy:
                value += w * t.coeff(0, 0) * jet.dyy();
                break;
            case DerivKind::Dx:
                value += w * t.coeff.col(0).dot(jet.grad.head(n));
                break;
            case DerivKind::Dy:
                value += w * t.coeff(0, 0) * jet.dy();
                break;
            case DerivKind::Id:
                value += w * t.coeff(0, 0) * jet.value;
                break;
        }
    }
    return value;
}

double apply_term_sum(const TermSum& sum, const SmoothFunction& u, const Vector& x,
                      double y) {
    if (y <= 0.0) throw std::domain_error("apply_term_sum requires y > 0");
    return sum.apply(u.jet(x, y), y);
}

TermSum TermSum::from_params(const OperatorParams& params) {
    const int n = params.dim_x;
    const double amid = 0.5 * (params.alpha1 + params.alpha2);
    TermSum sum;
    sum.dim_x = n;
    auto scalar = [](double v) { return (Matrix(1, 1) << v).finished(); };
    if (n > 0) {
        sum.terms.push_back({DerivKind::Dxx, params.alpha1, params.Q});
        sum.terms.push_back({DerivKind::DxDy, amid, 2.0 * params.q});
        sum.terms.push_back({DerivKind::Dx, amid - 1.0, params.d});
    }
    sum.terms.push_back({DerivKind::Dyy, params.alpha2, scalar(params.gamma)});
    sum.terms.push_back({DerivKind::Dy, params.alpha2 - 1.0, scalar(params.c)});
    sum.terms.push_back({DerivKind::Id, params.alpha2 - 2.0, scalar(-params.b)});
    sum.canonicalize();
    return sum;
}

bool TermSum::approx_equal(const TermSum& other, double tol) const {
    if (dim_x != other.dim_x || terms.size() != other.terms.size()) return false;
    for (size_t i = 0; i < terms.size(); ++i) {
        const auto& a = terms[i];
        const auto& b = other.terms[i];
        if (a.kind != b.kind) return false;
        if (std::abs(a.y_power - b.y_power) > tol) return false;
        if ((a.coeff - b.coeff).cwiseAbs().maxCoeff() >
            tol * (1.0 + a.coeff.cwiseAbs().maxCoeff()))
            return false;
    }
    return true;
}

TermSum conjugate_by_shift_general(const OperatorParams& params, double beta,
                                   const Vector& omega) {
    require_beta(beta);
    const int n = params.dim_x;
    if (omega.size() != n) throw std::invalid_argument("omega length mismatch");
    const double a1 = params.alpha1, a2 = params.alpha2;
    const double amid = 0.5 * (a1 + a2);
    const double bp1 = beta + 1.0;
    auto scalar = [](double v) { return (Matrix(1, 1) << v).finished(); };

    TermSum sum;
    sum.dim_x = n;
    // second derivatives in x
    sum.terms.push_back({DerivKind::Dxx, a1, params.Q});
    const Matrix qw = params.q * omega.transpose();
    sum.terms.push_back({DerivKind::Dxx, amid + beta, bp1 * (qw + qw.transpose())});
    sum.terms.push_back({DerivKind::Dxx, a2 + 2.0 * beta,
                         params.gamma * bp1 * bp1 * (omega * omega.transpose())});
    // mixed derivatives
    sum.terms.push_back({DerivKind::DxDy, amid, 2.0 * params.q});
    sum.terms.push_back({DerivKind::DxDy, a2 + beta, 2.0 * params.gamma * bp1 * omega});
    // pure y part is untouched
    sum.terms.push_back({DerivKind::Dyy, a2, scalar(params.gamma)});
    sum.terms.push_back({DerivKind::Dy, a2 - 1.0, scalar(params.c)});
    sum.terms.push_back({DerivKind::Id, a2 - 2.0, scalar(-params.b)});
    // first derivatives in x
    sum.terms.push_back(
        {DerivKind::Dx, a2 + beta - 1.0, (params.c + params.gamma * beta) * bp1 * omega});
    sum.terms.push_back({DerivKind::Dx, amid - 1.0, params.d});
    sum.canonicalize();
    return sum;
}

OperatorParams conjugate_by_shift_matched(const OperatorParams& params,
                                          const Vector& omega) {
    const double beta = params.beta_alpha();
    require_beta(beta);
    if (omega.size() != params.dim_x)
        throw std::invalid_argument("omega length mismatch");
    const double bp1 = beta + 1.0;
    OperatorParams out = params;
    const Matrix qw = params.q * omega.transpose();
    out.Q = params.Q + bp1 * (qw + qw.transpose()) +
            params.gamma * bp1 * bp1 * (omega * omega.transpose());
    out.q = params.q + params.gamma * bp1 * omega;
    out.d = params.d + (params.c + params.gamma * beta) * bp1 * omega;
    return out;
}

double TransformPipeline::prefactor() const {
    double prod = 1.0;
    for (const auto& st : stages) {
        if (std::holds_alternative<KelvinStep>(st.step)) {
            const auto& k = std::get<KelvinStep>(st.step);
            prod *= std::pow(std::abs(k.beta + 1.0), 1.0 / k.p);
        }
    }
    return prod;
}

TransformPipeline reduce_to_canonical(const OperatorParams& params,
                                      const SpaceParams& space, BcKind mode) {
    require_admissible(params);
    if (mode != BcKind::dirichlet && params.b != 0.0)
        throw std::invalid_argument(
            "oblique/neumann reduction requires zero potential (b = 0)");

    TransformPipeline pipe;
    pipe.source_params = params;
    pipe.source_space = space;
    pipe.source_indicial = indicial_roots(params);

    OperatorParams cur = params;
    SpaceParams cursp = space;
    auto push = [&](const TransformStep& step) {
        PipelineStage st;
        st.step = step;
        if (std::holds_alternative<KelvinStep>(step)) {
            const auto& ks = std::get<KelvinStep>(step);
            std::tie(cur, cursp) = conjugate_by_kelvin(cur, cursp, ks.k, ks.beta);
        } else {
            cur = conjugate_by_shift_matched(cur, std::get<ShiftStep>(step).omega);
        }
        st.params_after = cur;
        st.space_after = cursp;
        st.indicial_after = indicial_roots(cur);
        pipe.stages.push_back(st);
    };

    if (!cur.equal_exponents()) push(KelvinStep{0.0, cur.beta_alpha(), space.p});

    if (mode == BcKind::dirichlet) {
        const IndicialData ind = indicial_roots(cur);
        if (std::abs(ind.s1) > 1e-14 * (1.0 + std::abs(cur.c / cur.gamma)))
            push(KelvinStep{-ind.s1, 0.0, space.p});
    }

    if (cur.dim_x > 0 && cur.d.cwiseAbs().maxCoeff() > 0.0) {
        const double scale = std::abs(cur.gamma) + std::abs(cur.c);
        if (std::abs(cur.c) <= 1e-14 * scale)
            throw std::invalid_argument(
                "cannot remove tangential drift: normal drift vanishes");
        push(ShiftStep{0.0, Vector(-cur.d / cur.c)});
    }
    return pipe;
}

}  // namespace degenop
