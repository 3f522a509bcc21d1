#include "degenop/generation.hpp"

#include <cmath>
#include <stdexcept>

namespace degenop {

namespace {

constexpr const char* kHalflineNote =
    "halfline convention: window lower bound uses 0 in place of the negative part of "
    "alpha1";

constexpr const char* kCoreNeumann =
    "smooth compactly supported functions on the closed half-space, constant in y near "
    "the boundary (finite sums of x-profiles tensor y-profiles)";
constexpr const char* kCoreOblique =
    "smooth compactly supported functions on the closed half-space whose weighted "
    "oblique combination vanishes near the boundary";
constexpr const char* kCoreDirichlet =
    "y^{-s1} times the oblique core of the potential-free conjugate operator";
constexpr const char* kCoreRellich =
    "smooth functions compactly supported in the open half-space";

std::string theorem_tag(BcKind kind, const OperatorParams& params) {
    std::string head = kind == BcKind::dirichlet ? "dirichlet" : "oblique";
    if (params.dim_x == 0) return head + "_halfline";
    return head + (params.equal_exponents() ? "_equal_exponents" : "_general_exponents");
}

void classify(const Window& w, double v, GenerationReport& report) {
    report.window = w;
    if (w.empty()) {
        report.generates = false;
        report.reasons.push_back("window is empty");
    } else if (v == w.lo || v == w.hi) {
        report.generates = false;
        report.reasons.push_back(
            "value equals a window endpoint; theorems require strict inequalities");
    } else if (w.contains(v)) {
        report.generates = true;
        report.reasons.push_back("value inside the generation window");
    } else {
        report.generates = false;
        report.reasons.push_back("value outside the generation window");
    }
}

bool has_drift(const OperatorParams& params) {
    return params.dim_x > 0 && params.d.cwiseAbs().maxCoeff() > 0.0;
}

}  // namespace

const char* to_string(RegimeFlag flag) {
    switch (flag) {
        case RegimeFlag::NEUMANN_AUTOMATIC: return "NEUMANN_AUTOMATIC";
        case RegimeFlag::NEUMANN_TRACE_REQUIRED: return "NEUMANN_TRACE_REQUIRED";
        case RegimeFlag::WN_EQUALS_WV: return "WN_EQUALS_WV";
        case RegimeFlag::ALL_SPACES_COINCIDE: return "ALL_SPACES_COINCIDE";
        case RegimeFlag::RELLICH_DOMAIN: return "RELLICH_DOMAIN";
        case RegimeFlag::MIXED_DERIV_ESTIMATE: return "MIXED_DERIV_ESTIMATE";
        case RegimeFlag::DIRICHLET_OBLIQUE_COINCIDE: return "DIRICHLET_OBLIQUE_COINCIDE";
        case RegimeFlag::ALTERNATIVE_REALIZATION_EXISTS:
            return "ALTERNATIVE_REALIZATION_EXISTS";
        case RegimeFlag::DIRICHLET_ENLARGED_WINDOW: return "DIRICHLET_ENLARGED_WINDOW";
    }
    return "?";
}

GenerationReport check_generation(const OperatorParams& params, const SpaceParams& space,
                                  const BoundaryCondition& bc) {
    require_admissible(params);
    if (!(space.p > 1.0)) throw std::invalid_argument("space requires p > 1");
    if (bc.kind == BcKind::neumann && has_drift(params))
        throw std::invalid_argument("neumann boundary condition requires d = 0");

    GenerationReport report;
    report.value_mp = space.value_mp();
    report.theorem = theorem_tag(bc.kind, params);
    const double a1n = alpha1_lower(params);
    const double v = report.value_mp;

    if (bc.kind == BcKind::dirichlet) {
        const IndicialData ind = indicial_roots(params);
        classify(Window{ind.s1 + a1n, ind.s2 + 2.0 - params.alpha2}, v, report);
    } else {
        if (params.b != 0.0)
            throw std::invalid_argument(
                "oblique analysis requires zero potential (b = 0)");
        classify(Window{a1n, params.c / params.gamma + 1.0 - params.alpha2}, v, report);
        const double wc = params.c + params.beta_alpha() * params.gamma;
        if (wc == 0.0 && has_drift(params)) {
            report.generates = false;
            report.reasons.assign(
                {"tangential drift requires nonzero effective normal drift (d = 0 "
                 "required when c + beta_alpha*gamma = 0)"});
        }
    }
    if (params.dim_x == 0) report.reasons.push_back(kHalflineNote);
    return report;
}

std::vector<RegimeFlag> regime_flags(const OperatorParams& params,
                                     const SpaceParams& space) {
    require_admissible(params);
    const int N = params.dim_x;
    const double a1 = params.alpha1, a2 = params.alpha2;
    const double v = space.value_mp();
    const double a1n = alpha1_lower(params);
    const IndicialData ind = indicial_roots(params);
    const double cg = params.c / params.gamma;

    std::vector<RegimeFlag> flags;
    if (v > 1.0 - a2) flags.push_back(RegimeFlag::NEUMANN_AUTOMATIC);
    if (v < 1.0 - a2) flags.push_back(RegimeFlag::NEUMANN_TRACE_REQUIRED);
    if (N > 0 && v > 1.0 - 0.5 * (a1 + a2)) flags.push_back(RegimeFlag::WN_EQUALS_WV);
    if (v > 2.0 - a2) flags.push_back(RegimeFlag::ALL_SPACES_COINCIDE);
    const bool in_dirichlet = ind.s1 + a1n < v && v < ind.s2 + 2.0 - a2;
    if (in_dirichlet && v > ind.s1 + 2.0 - a2) flags.push_back(RegimeFlag::RELLICH_DOMAIN);
    if (N > 0 && in_dirichlet && v > ind.s1 + 1.0 - 0.5 * (a1 + a2))
        flags.push_back(RegimeFlag::MIXED_DERIV_ESTIMATE);
    if (params.b == 0.0 && cg > 1.0)
        flags.push_back(RegimeFlag::DIRICHLET_OBLIQUE_COINCIDE);
    // the second-root construction gives a genuinely different realization
    // only for distinct roots
    if (ind.D > 0.0 && ind.s2 + a1n < v && v < ind.s1 + 2.0 - a2)
        flags.push_back(RegimeFlag::ALTERNATIVE_REALIZATION_EXISTS);
    if (params.b == 0.0 && cg < 1.0 && cg - 1.0 + a1n < v && v < 2.0 - a2)
        flags.push_back(RegimeFlag::DIRICHLET_ENLARGED_WINDOW);
    return flags;
}

DomainSpec domain_description(const OperatorParams& params, const SpaceParams& space,
                              const BoundaryCondition& bc) {
    const GenerationReport gen = check_generation(params, space, bc);
    if (!gen.generates)
        throw std::invalid_argument(
            "domain_description requires a generating configuration");

    const double beta_a = params.dim_x == 0 ? 0.0 : params.beta_alpha();
    const IndicialData ind = indicial_roots(params);
    const std::vector<RegimeFlag> all = regime_flags(params, space);
    auto keep = [&](std::initializer_list<RegimeFlag> wanted) {
        std::vector<RegimeFlag> out;
        for (RegimeFlag f : all)
            for (RegimeFlag w : wanted)
                if (f == w) out.push_back(f);
        return out;
    };

    DomainSpec spec;
    if (bc.kind == BcKind::dirichlet) {
        spec.w_d = params.dim_x > 0 ? Vector(params.d - 2.0 * ind.s1 * params.q) : Vector();
        spec.w_c = params.c + beta_a * params.gamma - 2.0 * ind.s1 * params.gamma;
        spec.weight_shift = -ind.s1 * space.p;
        const bool rellich = space.value_mp() > ind.s1 + 2.0 - params.alpha2;
        const bool wd_zero = params.dim_x == 0 || spec.w_d.cwiseAbs().maxCoeff() == 0.0;
        if (rellich) {
            spec.space_family = "W_R";
            spec.core_description = kCoreRellich;
        } else if (ind.s1 == 0.0) {
            spec.space_family = wd_zero ? "W_N" : "W_v";
            spec.core_description = wd_zero ? kCoreNeumann : kCoreOblique;
        } else {
            spec.space_family = "y^{-s1} W_w";
            spec.core_description = kCoreDirichlet;
        }
        spec.trace.exponent = ind.s2;
        spec.trace.finite_limit = ind.D == 0.0;
        spec.equivalence_flags = keep(
            {RegimeFlag::ALL_SPACES_COINCIDE, RegimeFlag::RELLICH_DOMAIN,
             RegimeFlag::MIXED_DERIV_ESTIMATE, RegimeFlag::DIRICHLET_OBLIQUE_COINCIDE,
             RegimeFlag::ALTERNATIVE_REALIZATION_EXISTS,
             RegimeFlag::DIRICHLET_ENLARGED_WINDOW});
        return spec;
    }

    spec.w_d = params.d;
    spec.w_c = params.c + beta_a * params.gamma;
    spec.weight_shift = 0.0;
    const bool wd_zero = !has_drift(params);
    spec.space_family = wd_zero ? "W_N" : "W_v";
    spec.core_description = wd_zero ? kCoreNeumann : kCoreOblique;
    spec.trace.exponent = params.c / params.gamma;
    spec.trace.finite_limit = false;
    spec.trace.weight_dx = params.d;
    spec.trace.weight_dy = spec.w_c;
    spec.equivalence_flags =
        keep({RegimeFlag::NEUMANN_AUTOMATIC, RegimeFlag::NEUMANN_TRACE_REQUIRED,
              RegimeFlag::WN_EQUALS_WV, RegimeFlag::ALL_SPACES_COINCIDE,
              RegimeFlag::DIRICHLET_OBLIQUE_COINCIDE});
    return spec;
}

}  // namespace degenop
