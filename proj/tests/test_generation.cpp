#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "degenop/generation.hpp"
#include "degenop/property_suites.hpp"
#include "degenop/transforms.hpp"

using namespace degenop;

namespace {

OperatorParams halfline(double gamma, double c, double b, double alpha = 0.0) {
    OperatorParams p;
    p.dim_x = 0;
    p.alpha1 = p.alpha2 = alpha;
    p.Q = Matrix(0, 0);
    p.q = Vector(0);
    p.d = Vector(0);
    p.gamma = gamma;
    p.c = c;
    p.b = b;
    return p;
}

OperatorParams plane(double a1, double a2, double Q, double q, double gamma, double d,
                     double c, double b) {
    OperatorParams p;
    p.dim_x = 1;
    p.alpha1 = a1;
    p.alpha2 = a2;
    p.Q = (Matrix(1, 1) << Q).finished();
    p.q = (Vector(1) << q).finished();
    p.gamma = gamma;
    p.d = (Vector(1) << d).finished();
    p.c = c;
    p.b = b;
    return p;
}

bool has_flag(const std::vector<RegimeFlag>& flags, RegimeFlag f) {
    for (RegimeFlag g : flags)
        if (g == f) return true;
    return false;
}

}  // namespace

TEST_CASE("oblique window for the unit-drift base case") {
    const OperatorParams p = plane(0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0);
    const GenerationReport r =
        check_generation(p, SpaceParams{2.0, 0.0}, BoundaryCondition::oblique());
    REQUIRE(r.window.has_value());
    CHECK(r.window->lo == doctest::Approx(0.0));
    CHECK(r.window->hi == doctest::Approx(2.0));
    CHECK(r.value_mp == doctest::Approx(0.5));
    CHECK(r.generates);
}

TEST_CASE("empty oblique window rejects every space") {
    const OperatorParams p = plane(1.5, 1.5, 1.0, 0.0, 1.0, 0.0, 0.2, 0.0);
    const GenerationReport r =
        check_generation(p, SpaceParams{2.0, 0.0}, BoundaryCondition::oblique());
    REQUIRE(r.window.has_value());
    CHECK(r.window->hi == doctest::Approx(-0.3));
    CHECK(r.window->empty());
    CHECK_FALSE(r.generates);
}

TEST_CASE("dirichlet window from the indicial roots") {
    const OperatorParams p = halfline(1.0, 0.0, 0.75);
    const GenerationReport r =
        check_generation(p, SpaceParams{2.0, 0.0}, BoundaryCondition::dirichlet());
    REQUIRE(r.window.has_value());
    CHECK(r.window->lo == doctest::Approx(-1.5));
    CHECK(r.window->hi == doctest::Approx(2.5));
    CHECK(r.generates);
    CHECK(r.theorem == "dirichlet_halfline");
}

TEST_CASE("boundary values of the window are not covered") {
    // upper endpoint hit exactly: s2 + 2 - a2 = 0.5 with value 0.5
    const OperatorParams p = plane(1.5, 1.5, 1.0, 0.0, 1.0, 0.0, 0.2, 0.0);
    const GenerationReport r =
        check_generation(p, SpaceParams{2.0, 0.0}, BoundaryCondition::dirichlet());
    CHECK_FALSE(r.generates);
    bool endpoint_reason = false;
    for (const auto& reason : r.reasons)
        endpoint_reason = endpoint_reason || reason.find("endpoint") != std::string::npos;
    CHECK(endpoint_reason);
}

TEST_CASE("oblique mode requires zero potential") {
    const OperatorParams p = halfline(1.0, 1.0, 0.5);
    CHECK_THROWS_AS(
        check_generation(p, SpaceParams{2.0, 0.0}, BoundaryCondition::oblique()),
        std::invalid_argument);
}

TEST_CASE("neumann boundary condition rejects tangential drift") {
    const OperatorParams p = plane(0.0, 0.0, 1.0, 0.0, 1.0, 0.5, 1.0, 0.0);
    CHECK_THROWS_AS(
        check_generation(p, SpaceParams{2.0, 0.0}, BoundaryCondition::neumann()),
        std::invalid_argument);
}

TEST_CASE("side condition: drift without effective normal component") {
    // beta_alpha = -1/2, c = gamma/2: c + beta_alpha gamma = 0 with d != 0
    const OperatorParams p = plane(0.0, 1.0, 1.0, 0.0, 1.0, 0.5, 0.5, 0.0);
    REQUIRE(validate(p).admissible());
    REQUIRE(p.c + p.beta_alpha() * p.gamma == doctest::Approx(0.0));
    const GenerationReport r =
        check_generation(p, SpaceParams{2.0, 0.5}, BoundaryCondition::oblique());
    CHECK_FALSE(r.generates);
}

TEST_CASE("domain description: neumann family without weight shift") {
    const OperatorParams p = plane(0.3, 0.3, 1.0, 0.2, 1.0, 0.0, 0.8, 0.0);
    const DomainSpec spec =
        domain_description(p, SpaceParams{2.0, 0.0}, BoundaryCondition::oblique());
    CHECK(spec.space_family == "W_N");
    CHECK(spec.weight_shift == doctest::Approx(0.0));
    CHECK(spec.trace.exponent == doctest::Approx(0.8));
    CHECK_FALSE(spec.trace.finite_limit);
}

TEST_CASE("domain description: dirichlet shift and trace for the potential case") {
    const OperatorParams p = plane(0.0, 0.0, 1.0, 0.4, 1.0, 0.3, 0.0, 0.75);
    const SpaceParams space{2.0, 0.0};
    const DomainSpec spec =
        domain_description(p, space, BoundaryCondition::dirichlet());
    CHECK(spec.space_family == "y^{-s1} W_w");
    // w = (d - 2 s1 q, c - 2 s1 gamma) with s1 = -3/2
    CHECK(spec.w_d(0) == doctest::Approx(0.3 + 3.0 * 0.4));
    CHECK(spec.w_c == doctest::Approx(3.0));
    CHECK(spec.weight_shift == doctest::Approx(3.0));  // -s1 p
    CHECK(spec.trace.exponent == doctest::Approx(0.5));
    CHECK_FALSE(spec.trace.finite_limit);
}

TEST_CASE("domain description: double root gives a finite-limit trace") {
    const OperatorParams p = plane(0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0);
    const DomainSpec spec =
        domain_description(p, SpaceParams{2.0, 0.0}, BoundaryCondition::dirichlet());
    CHECK(spec.trace.exponent == doctest::Approx(0.0));
    CHECK(spec.trace.finite_limit);
}

TEST_CASE("regime flags: space collapse thresholds") {
    const OperatorParams p = plane(0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0);
    // (m+1)/p = 3 > 2 - a2
    CHECK(has_flag(regime_flags(p, SpaceParams{1.5, 3.5}),
                   RegimeFlag::ALL_SPACES_COINCIDE));
    // (m+1)/p = 0.5 < 1 - a2
    CHECK(has_flag(regime_flags(p, SpaceParams{2.0, 0.0}),
                   RegimeFlag::NEUMANN_TRACE_REQUIRED));
    // b = 0, c/gamma = 2 > 1
    const OperatorParams q = plane(0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 2.0, 0.0);
    CHECK(has_flag(regime_flags(q, SpaceParams{2.0, 0.0}),
                   RegimeFlag::DIRICHLET_OBLIQUE_COINCIDE));
}

TEST_CASE("flag consistency: rellich implies mixed implies window membership") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 400; ++k) {
        const OperatorParams p = random_params(rng, 1);
        const SpaceParams s = random_space(rng);
        const auto flags = regime_flags(p, s);
        const IndicialData ind = indicial_roots(p);
        const double v = s.value_mp();
        const double a1n = alpha1_lower(p);
        if (has_flag(flags, RegimeFlag::RELLICH_DOMAIN))
            CHECK(has_flag(flags, RegimeFlag::MIXED_DERIV_ESTIMATE));
        if (has_flag(flags, RegimeFlag::MIXED_DERIV_ESTIMATE)) {
            CHECK(ind.s1 + a1n < v);
            CHECK(v < ind.s2 + 2.0 - p.alpha2);
        }
        if (has_flag(flags, RegimeFlag::ALTERNATIVE_REALIZATION_EXISTS))
            CHECK(ind.s2 < ind.s1 + 2.0 - p.alpha2);
    }
}

TEST_CASE("dirichlet window contains the oblique window when b = 0, c < gamma") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        OperatorParams p = random_params(rng, 1);
        p.b = 0.0;
        p.c = p.gamma * unit(rng);  // c < gamma
        const IndicialData ind = indicial_roots(p);
        const double a1n = alpha1_lower(p);
        // oblique (a1n, c/g + 1 - a2) inside dirichlet (s1 + a1n, s2 + 2 - a2)
        CHECK(ind.s1 + a1n <= a1n + 1e-15);
        CHECK(p.c / p.gamma + 1.0 - p.alpha2 <= ind.s2 + 2.0 - p.alpha2 + 1e-15);
    }
}

TEST_CASE("verdicts are equivariant under the canonical reduction") {
    std::mt19937_64 rng(51);
    for (int k = 0; k < 200; ++k) {
        const OperatorParams p = random_params(rng, 1 + static_cast<int>(rng() % 2));
        const SpaceParams s = random_space(rng);
        const TransformPipeline pipe = reduce_to_canonical(p, s, BcKind::dirichlet);
        const GenerationReport before =
            check_generation(p, s, BoundaryCondition::dirichlet());
        const GenerationReport after = check_generation(
            pipe.target_params(), pipe.target_space(), BoundaryCondition::dirichlet());
        CHECK(before.generates == after.generates);
        // the windows map onto each other: compare the normalized positions
        if (!before.window->empty()) {
            const double pos_before =
                (before.value_mp - before.window->lo) /
                (before.window->hi - before.window->lo);
            const double pos_after = (after.value_mp - after.window->lo) /
                                     (after.window->hi - after.window->lo);
            CHECK(pos_before == doctest::Approx(pos_after).epsilon(1e-9));
        }
        if (p.b == 0.0) {
            const TransformPipeline opipe = reduce_to_canonical(p, s, BcKind::oblique);
            const GenerationReport obefore =
                check_generation(p, s, BoundaryCondition::oblique());
            const GenerationReport oafter =
                check_generation(opipe.target_params(), opipe.target_space(),
                                 BoundaryCondition::oblique());
            CHECK(obefore.generates == oafter.generates);
        }
    }
}

TEST_CASE("analyzer handles higher tangential dimension") {
    OperatorParams p;
    p.dim_x = 2;
    p.alpha1 = 0.5;
    p.alpha2 = -0.2;
    p.Q = (Matrix(2, 2) << 1.2, 0.3, 0.3, 0.9).finished();
    p.q = (Vector(2) << 0.2, -0.1).finished();
    p.gamma = 1.1;
    p.d = (Vector(2) << 0.4, 0.0).finished();
    p.c = 0.8;
    p.b = 0.0;
    REQUIRE(validate(p).admissible());
    const SpaceParams s{2.0, 0.0};
    const GenerationReport r = check_generation(p, s, BoundaryCondition::oblique());
    CHECK(r.window->lo == doctest::Approx(0.0));
    CHECK(r.window->hi == doctest::Approx(0.8 / 1.1 + 1.0 + 0.2));
    CHECK(r.generates);
    const DomainSpec spec = domain_description(p, s, BoundaryCondition::oblique());
    CHECK(spec.w_d.size() == 2);
    CHECK(spec.w_c == doctest::Approx(0.8 + p.beta_alpha() * 1.1));
    const TransformPipeline pipe = reduce_to_canonical(p, s, BcKind::oblique);
    CHECK(pipe.target_params().d.cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(pipe.target_params().alpha1 ==
          doctest::Approx(pipe.target_params().alpha2));
}

TEST_CASE("domain_description refuses non-generating configurations") {
    const OperatorParams p = plane(1.5, 1.5, 1.0, 0.0, 1.0, 0.0, 0.2, 0.0);
    CHECK_THROWS_AS(
        domain_description(p, SpaceParams{2.0, 0.0}, BoundaryCondition::oblique()),
        std::invalid_argument);
}
