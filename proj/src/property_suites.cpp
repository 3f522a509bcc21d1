#include "degenop/property_suites.hpp"

#include <cmath>

#include "degenop/grid_function.hpp"

namespace degenop {

namespace {

// magnitude scale of L~u at a point: sum of |term| over the standard form,
// used as the denominator of relative deviations
double term_scale(const OperatorParams& params, const SmoothFunction& u,
                  const Vector& x, double y) {
    const TermSum sum = TermSum::from_params(params);
    const Jet2 jet = u.jet(x, y);
    double scale = 0.0;
    for (const auto& t : sum.terms) {
        TermSum single;
        single.dim_x = sum.dim_x;
        single.terms = {t};
        scale += std::abs(single.apply(jet, y));
    }
    return scale;
}

Vector random_point_x(std::mt19937_64& rng, int dim_x) {
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    Vector x(dim_x);
    for (int i = 0; i < dim_x; ++i) x(i) = coord(rng);
    return x;
}

}  // namespace

OperatorParams random_params(std::mt19937_64& rng, int dim_x) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    OperatorParams p;
    p.dim_x = dim_x;
    p.alpha2 = -1.5 + 3.4 * unit(rng);                       // < 1.9
    p.alpha1 = p.alpha2 - 1.9 + (1.9 + 2.0) * unit(rng);     // a2 - a1 < 2 strictly
    const int n = dim_x;
    Matrix G(n + 1, n + 1);
    for (int r = 0; r <= n; ++r)
        for (int c2 = 0; c2 <= n; ++c2) G(r, c2) = sym(rng);
    Matrix A = G.transpose() * G + (0.2 + unit(rng)) * Matrix::Identity(n + 1, n + 1);
    p.Q = A.topLeftCorner(n, n);
    p.q = A.topRightCorner(n, 1);
    p.gamma = A(n, n);
    p.d = Vector(n);
    for (int i = 0; i < n; ++i) p.d(i) = 2.0 * sym(rng);
    p.c = 2.5 * sym(rng);
    // sample the discriminant directly so D >= 0 by construction; keep it
    // either exactly at the double root or away from it, where sqrt(D) is
    // well conditioned
    const double D = unit(rng) < 0.15 ? 0.0 : 0.05 + 2.2 * unit(rng);
    const double half = 0.5 * (p.c / p.gamma - 1.0);
    p.b = p.gamma * (D - half * half);
    return p;
}

SpaceParams random_space(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SpaceParams s;
    s.p = 1.2 + 3.0 * unit(rng);
    s.m = -1.0 + 3.0 * unit(rng);
    return s;
}

SuiteResult conjugation_identity_suite(std::uint64_t seed, int n_params, int n_functions,
                                       int n_points) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    std::uniform_real_distribution<double> ypos(0.3, 2.5);

    SuiteResult result;
    result.name = "conjugation_identity";
    result.bound = 1e-9;
    double worst = 0.0;

    for (int pc = 0; pc < n_params; ++pc) {
        const int dim_x = 1 + static_cast<int>(rng() % 3);
        const OperatorParams params = random_params(rng, dim_x);
        const SpaceParams space = random_space(rng);

        // one Kelvin (occasionally orientation reversing), one matched shear,
        // one general shear per parameter set
        double k = 1.5 * sym(rng);
        double beta = unit(rng) < 0.2 ? -2.0 + 0.8 * sym(rng) : -0.8 + 1.6 * unit(rng);
        if (std::abs(beta + 1.0) < 0.05) beta = 0.5;
        Vector omega(dim_x);
        for (int i = 0; i < dim_x; ++i) omega(i) = sym(rng);
        double beta_free = -0.7 + 1.8 * unit(rng);

        const KelvinStep kelvin{k, beta, space.p};
        auto [kparams, kspace] = conjugate_by_kelvin(params, space, k, beta);
        const OperatorParams sparams = conjugate_by_shift_matched(params, omega);
        const ShiftStep shear{params.beta_alpha(), omega};
        const TermSum general = conjugate_by_shift_general(params, beta_free, omega);
        const ShiftStep shear_free{beta_free, omega};

        // the conjugated path evaluates L at the mapped point, where the
        // individual terms can dwarf their sum; relative deviations are
        // measured against the larger of the two evaluation scales
        for (int fc = 0; fc < n_functions; ++fc) {
            const auto u = std::static_pointer_cast<const SmoothFunction>(
                std::make_shared<TestFunction>(TestFunction::random(dim_x, rng)));
            const auto ku = apply_transform(TransformStep(kelvin), u);
            const auto su = apply_transform(TransformStep(shear), u);
            const auto gu = apply_transform(TransformStep(shear_free), u);
            for (int ptc = 0; ptc < n_points; ++ptc) {
                const Vector x = random_point_x(rng, dim_x);
                const double y = ypos(rng);
                const double rhs_scale = term_scale(params, *u, x, y);

                const double eta = std::pow(y, 1.0 / (beta + 1.0));
                const double kel_mult =
                    std::pow(std::abs(beta + 1.0), -1.0 / space.p) *
                    std::pow(y, -k / (beta + 1.0));
                const double lhs_scale_k =
                    std::abs(kel_mult) * term_scale(params, *ku, x, eta);
                const double lhs_k = conjugated_apply(kelvin, params, u, x, y);
                const double rhs_k = apply_operator(kparams, *u, x, y);
                worst = std::max(worst, std::abs(lhs_k - rhs_k) /
                                            std::max({rhs_scale, lhs_scale_k, 1.0}));

                const Vector back_s =
                    x - omega * std::pow(y, params.beta_alpha() + 1.0);
                const double lhs_scale_s = term_scale(params, *su, back_s, y);
                const double lhs_s = conjugated_apply(shear, params, u, x, y);
                const double rhs_s = apply_operator(sparams, *u, x, y);
                worst = std::max(worst, std::abs(lhs_s - rhs_s) /
                                            std::max({rhs_scale, lhs_scale_s, 1.0}));

                const Vector back_g = x - omega * std::pow(y, beta_free + 1.0);
                const double lhs_scale_g = term_scale(params, *gu, back_g, y);
                const double lhs_g = conjugated_apply(shear_free, params, u, x, y);
                const double rhs_g = apply_term_sum(general, *u, x, y);
                worst = std::max(worst, std::abs(lhs_g - rhs_g) /
                                            std::max({rhs_scale, lhs_scale_g, 1.0}));
                result.cases += 3;
            }
        }
    }
    result.worst = worst;
    result.pass = worst <= result.bound;
    return result;
}

SuiteResult group_law_suite(std::uint64_t seed, int n_cases) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    std::uniform_real_distribution<double> ypos(0.3, 2.2);

    SuiteResult result;
    result.name = "transform_group_laws";
    result.bound = 1e-10;  // the commutation part; algebra parts use 1e-12
    double worst_alg = 0.0, worst_pt = 0.0;

    for (int cs = 0; cs < n_cases; ++cs) {
        const int dim_x = 1 + static_cast<int>(rng() % 2);
        const OperatorParams params = random_params(rng, dim_x);
        const SpaceParams space = random_space(rng);
        double k = 1.5 * sym(rng);
        double beta = unit(rng) < 0.3 ? -2.2 + sym(rng) : -0.8 + 1.7 * unit(rng);
        if (std::abs(beta + 1.0) < 0.05) beta = 0.4;

        // inverse composition restores the record
        auto [p1, s1] = conjugate_by_kelvin(params, space, k, beta);
        const KelvinStep inv = inverse(KelvinStep{k, beta, space.p});
        auto [p2, s2] = conjugate_by_kelvin(p1, s1, inv.k, inv.beta);
        auto reldiff = [](double a, double b2) {
            return std::abs(a - b2) / (1.0 + std::abs(a));
        };
        worst_alg = std::max({worst_alg, reldiff(p2.alpha1, params.alpha1),
                              reldiff(p2.alpha2, params.alpha2),
                              reldiff(p2.gamma, params.gamma), reldiff(p2.c, params.c),
                              reldiff(p2.b, params.b), reldiff(s2.m, space.m)});
        worst_alg = std::max(worst_alg, (p2.q - params.q).cwiseAbs().maxCoeff());
        worst_alg = std::max(worst_alg, (p2.d - params.d).cwiseAbs().maxCoeff());
        worst_alg =
            std::max(worst_alg, (p2.Q - params.Q).cwiseAbs().maxCoeff() /
                                    (1.0 + params.Q.cwiseAbs().maxCoeff()));

        // indicial covariance, including the swap for beta+1 < 0
        const IndicialData ind = indicial_roots(params);
        const IndicialData mapped = transform_indicial(ind, k, beta);
        const IndicialData direct = indicial_roots(p1);
        worst_alg = std::max({worst_alg, reldiff(mapped.D, direct.D),
                              reldiff(mapped.s1, direct.s1), reldiff(mapped.s2, direct.s2)});

        // matched shear leaves the indicial data untouched
        Vector omega(dim_x);
        for (int i = 0; i < dim_x; ++i) omega(i) = sym(rng);
        const IndicialData after_shift =
            indicial_roots(conjugate_by_shift_matched(params, omega));
        worst_alg = std::max({worst_alg, reldiff(after_shift.D, ind.D),
                              reldiff(after_shift.s1, ind.s1),
                              reldiff(after_shift.s2, ind.s2)});

        // commutation S_{g',w} T_{0,b} = T_{0,b} S_{g~',w}, g~'+1 = (g'+1)/(b+1)
        double gp = -0.6 + 1.5 * unit(rng);
        double tb = -0.6 + 1.5 * unit(rng);
        const auto u = std::make_shared<TestFunction>(TestFunction::random(dim_x, rng));
        const auto lhs = apply_transform(
            TransformStep(ShiftStep{gp, omega}),
            apply_transform(TransformStep(KelvinStep{0.0, tb, space.p}), u));
        const double gtp = (gp + 1.0) / (tb + 1.0) - 1.0;
        const auto rhs = apply_transform(
            TransformStep(KelvinStep{0.0, tb, space.p}),
            apply_transform(TransformStep(ShiftStep{gtp, omega}), u));
        for (int ptc = 0; ptc < 5; ++ptc) {
            const Vector x = random_point_x(rng, dim_x);
            const double y = ypos(rng);
            const double a = lhs->value(x, y), b2 = rhs->value(x, y);
            worst_pt = std::max(worst_pt, std::abs(a - b2) / (1.0 + std::abs(a)));
        }
        result.cases += 1;
    }
    result.worst = std::max(worst_alg, worst_pt);
    result.pass = worst_alg <= 1e-12 && worst_pt <= 1e-10;
    char buf[96];
    std::snprintf(buf, sizeof buf, "algebra %.3g, pointwise %.3g", worst_alg, worst_pt);
    result.detail = buf;
    return result;
}

SuiteResult pipeline_postcondition_suite(std::uint64_t seed, int n_cases) {
    std::mt19937_64 rng(seed);
    SuiteResult result;
    result.name = "pipeline_postconditions";
    result.bound = 1e-12;
    double worst = 0.0;
    for (int cs = 0; cs < n_cases; ++cs) {
        const int dim_x = 1 + static_cast<int>(rng() % 2);
        const OperatorParams params = random_params(rng, dim_x);
        const SpaceParams space = random_space(rng);
        const TransformPipeline pipe = reduce_to_canonical(params, space, BcKind::dirichlet);
        const OperatorParams& t = pipe.target_params();
        const IndicialData tind = pipe.target_indicial();
        worst = std::max(worst, std::abs(t.b) / (1.0 + std::abs(params.b)));
        worst = std::max(worst, std::abs(t.alpha1 - t.alpha2));
        if (t.dim_x > 0) worst = std::max(worst, t.d.cwiseAbs().maxCoeff());
        worst = std::max(worst,
                         std::abs(t.c / t.gamma - (1.0 + 2.0 * std::sqrt(tind.D))));

        // drift bookkeeping before the shear: x-part d - 2 s1 q exactly,
        // y-part carries the (beta_alpha + 1) trail
        const IndicialData ind = indicial_roots(params);
        const double bp1 = params.beta_alpha() + 1.0;
        size_t stage = 0;
        OperatorParams mid = params;
        if (!params.equal_exponents()) mid = pipe.stages[stage++].params_after;
        if (stage < pipe.stages.size() &&
            std::holds_alternative<KelvinStep>(pipe.stages[stage].step))
            mid = pipe.stages[stage++].params_after;
        const Vector expect_d = params.d - 2.0 * ind.s1 * params.q;
        const double expect_c =
            bp1 * (params.c + params.beta_alpha() * params.gamma -
                   2.0 * ind.s1 * params.gamma);
        if (dim_x > 0)
            worst = std::max(worst, (mid.d - expect_d).cwiseAbs().maxCoeff() /
                                        (1.0 + expect_d.cwiseAbs().maxCoeff()));
        worst = std::max(worst,
                         std::abs(mid.c - expect_c) / (1.0 + std::abs(expect_c)));
        result.cases += 1;
    }
    result.worst = worst;
    result.pass = worst <= result.bound;
    return result;
}

SuiteResult isometry_quadrature_suite(std::uint64_t seed, int n_cases) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SuiteResult result;
    result.name = "isometry_quadrature";
    result.bound = 1e-6;
    double worst = 0.0;
    for (int cs = 0; cs < n_cases; ++cs) {
        // y-profiles with at least one vanishing power keep the weighted
        // integrand bounded near 0 for the sampled measure exponents
        std::vector<TestFunction::Term> terms;
        for (int t = 0; t < 2; ++t) {
            TestFunction::Term term;
            term.coeff = -1.0 + 2.0 * unit(rng);
            term.ypow = 1 + static_cast<int>(rng() % 3);
            term.decay = 0.4 + 0.8 * unit(rng);
            terms.push_back(term);
        }
        const auto u = std::make_shared<TestFunction>(TestFunction(0, terms));
        const double beta = -0.3 + 1.1 * unit(rng);
        const SpaceParams space{1.5 + 2.0 * unit(rng), 0.3 + 1.5 * unit(rng)};
        const double m_tilde = (space.m - beta) / (beta + 1.0);

        // the transformed profile decays like exp(-a y^{2(beta+1)}); the
        // truncation follows the image of the untransformed box
        const double y_u = 16.0;
        const double y_t = std::pow(y_u, 1.0 / (beta + 1.0));
        const auto tu = apply_transform(TransformStep(KelvinStep{0.0, beta, space.p}), u);
        const GradedMesh mesh = GradedMesh::half_line(32768, y_t, 2.0);
        const GridFunction gu = GridFunction::sample(*tu, mesh, space.m, space.p);
        const double lhs = weighted_lp_norm(gu, space.m, space.p);

        const GradedMesh mesh2 = GradedMesh::half_line(32768, y_u, 2.0);
        const GridFunction gv = GridFunction::sample(*u, mesh2, m_tilde, space.p);
        const double rhs = weighted_lp_norm(gv, m_tilde, space.p);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(rhs, 1e-12));
        result.cases += 1;
    }
    result.worst = worst;
    result.pass = worst <= result.bound;
    return result;
}

}  // namespace degenop
