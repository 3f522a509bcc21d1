#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include <random>

#include "degenop/property_suites.hpp"
#include "degenop/sobolev.hpp"

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

GridFunction from_values(const GradedMesh& mesh,
                         const std::function<double(double)>& f, double m, double p) {
    GridFunction g = GridFunction::zero(mesh, m, p);
    for (int j = 0; j < mesh.ny; ++j) g.at(j) = f(mesh.y[j]);
    return g;
}

}  // namespace

TEST_CASE("zero function has zero norm") {
    const GradedMesh mesh = GradedMesh::half_line(50, 4.0, 2.0);
    CHECK(weighted_lp_norm(GridFunction::zero(mesh), 0.7, 1.8) == doctest::Approx(0.0));
}

TEST_CASE("quadrature is exact when the graded integrand is piecewise linear") {
    // r = 1, p = 1, m = 0, u = y: integral Y^2/2 exactly
    {
        const GradedMesh mesh = GradedMesh::half_line(37, 3.0, 1.0);
        const GridFunction u = from_values(mesh, [](double y) { return y; }, 0.0, 1.0);
        CHECK(std::abs(weighted_lp_norm(u, 0.0, 1.0) - 4.5) <= 1e-10);
    }
    // r = 2, p = 2, m = 1, u = y^{-1/2}: |u|^2 y^m = 1, integral Y exactly
    {
        const GradedMesh mesh = GradedMesh::half_line(41, 5.0, 2.0);
        const GridFunction u =
            from_values(mesh, [](double y) { return 1.0 / std::sqrt(y); }, 1.0, 2.0);
        CHECK(std::abs(weighted_lp_norm(u, 1.0, 2.0) - std::sqrt(5.0)) <= 1e-10);
    }
}

TEST_CASE("gamma-integral oracle: ||e^{-y}||_{L^2_1} = 1/2") {
    // int_0^inf e^{-2y} y dy = 1/4
    const GradedMesh mesh = GradedMesh::half_line(2000, 40.0, 2.0);
    const GridFunction u =
        from_values(mesh, [](double y) { return std::exp(-y); }, 1.0, 2.0);
    CHECK(std::abs(weighted_lp_norm(u, 1.0, 2.0) - 0.5) <= 1e-6);
}

TEST_CASE("kelvin rescaling is an isometry between the weighted spaces") {
    const SuiteResult r = isometry_quadrature_suite(2024, 4);
    INFO(r.worst);
    CHECK(r.pass);
}

TEST_CASE("grid transport: kelvin steps sample the image mesh exactly") {
    std::mt19937_64 rng(4);
    const auto u = std::make_shared<TestFunction>(TestFunction::random(0, rng));
    const GradedMesh mesh = GradedMesh::half_line(64, 4.0, 2.0);
    const GridFunction g = GridFunction::sample(*u, mesh, 0.3, 2.0);
    const KelvinStep step{0.7, 0.5, 2.0};
    const GridFunction tg = apply_transform(TransformStep(step), g);
    const auto tu = apply_transform(TransformStep(step),
                                    std::static_pointer_cast<const SmoothFunction>(u));
    for (int j = 0; j < tg.mesh.ny; ++j)
        CHECK(std::abs(tg.at(j) - Complex(tu->value(Vector(), tg.mesh.y[j]))) <=
              1e-12 * (1.0 + std::abs(tg.at(j))));
    // measure-exponent bookkeeping follows the isometry
    CHECK(tg.m == doctest::Approx(0.3 * 1.5 - 0.7 * 2.0 + 0.5));
}

TEST_CASE("grid transport: shear interpolation is fourth-order accurate") {
    // exactly x-periodic data on the box, so the wrap sees no jump
    TestFunction::Term t;
    t.coeff = 1.3;
    t.ypow = 1;
    t.decay = 0.8;
    const auto u = std::make_shared<CosineProfile>(2.0, 0.4, TestFunction(0, {t}));
    const ShiftStep step{0.0, (Vector(1) << 0.4).finished()};
    const auto su = apply_transform(TransformStep(step),
                                    std::static_pointer_cast<const SmoothFunction>(u));
    auto worst_at = [&](int nx) {
        const GradedMesh mesh =
            GradedMesh::half_plane(nx, std::numbers::pi, 48, 3.0, 2.0);
        const GridFunction g = GridFunction::sample(*u, mesh, 0.0, 2.0);
        const GridFunction sg = apply_transform(TransformStep(step), g);
        double worst = 0.0;
        Vector x(1);
        for (int j = 0; j < mesh.ny; ++j)
            for (int i = 0; i < mesh.nx; ++i) {
                x(0) = mesh.x(i);
                worst = std::max(worst,
                                 std::abs(sg.at(i, j) - Complex(su->value(x, mesh.y[j]))));
            }
        return worst;
    };
    const double coarse = worst_at(64);
    const double fine = worst_at(128);
    CHECK(coarse <= 1e-3);
    CHECK(fine <= coarse / 10.0);  // cubic interpolation gains ~2^4 per halving
}

TEST_CASE("sobolev norms of a bump are finite for any weights") {
    // supported in 1 < y < 2, so every weight is bounded on the support
    TestFunction::Term t;
    t.coeff = 1.0;
    t.ypow = 6;
    t.decay = 3.0;
    const TestFunction bumpish(0, {t});
    const GradedMesh mesh = GradedMesh::half_line(400, 8.0, 2.0);
    for (double a : {-1.5, 0.0, 1.5}) {
        const OperatorParams p = halfline(1.0, 0.5, 0.0, a);
        const SobolevTermNorms n =
            sobolev_term_norms(bumpish, mesh, p, SpaceParams{2.0, -2.0});
        for (double v : {n.u, n.dy, n.dyy, n.neumann, n.rellich}) {
            CHECK(std::isfinite(v));
            CHECK(v < 1e3);
        }
    }
}

TEST_CASE("constant function: derivative terms vanish, norm matches closed form") {
    const GradedMesh mesh = GradedMesh::half_line(600, 2.0, 2.0);
    const OperatorParams p = halfline(1.0, 1.0, 0.0, 0.5);
    const SpaceParams space{2.0, 1.2};
    const GridFunction one = from_values(mesh, [](double) { return 1.0; }, space.m,
                                         space.p);
    const SobolevTermNorms n = sobolev_term_norms(one, p, space);
    CHECK(n.dy <= 1e-10);
    CHECK(n.dyy <= 1e-8);
    // (int_0^Y y^m)^{1/p} = (Y^{m+1}/(m+1))^{1/p}
    const double closed = std::pow(std::pow(2.0, 2.2) / 2.2, 0.5);
    CHECK(n.u == doctest::Approx(closed).epsilon(1e-4));
}

TEST_CASE("membership probe: shifted profile diverges in the bare terms, "
          "converges after the transport") {
    // gamma=1, c=0, b=3/4: s1 = -3/2; u = y^{3/2} e^{-y^2}
    const OperatorParams params = halfline(1.0, 0.0, 0.75);
    const SpaceParams space{2.0, -2.0};
    // integrability exponents near 0: |y^{a2-2} u|^p y^m has exponent
    // (3/2 - 2) p + m = -3 < -1 (diverges); after u = y^{-s1} w the same term
    // for w carries (0 - 0) p + m - s1 p = 1 > -1 (converges)
    REQUIRE((1.5 - 2.0) * space.p + space.m < -1.0);
    REQUIRE(space.m - (-1.5) * space.p > -1.0);

    TestFunction::Term t;
    t.coeff = 1.0;
    t.decay = 1.0;
    const auto profile = std::make_shared<TestFunction>(TestFunction(0, {t}));
    const auto u = std::make_shared<KelvinTransformed>(profile, 1.5, 0.0, space.p);
    const GradedMesh base = GradedMesh::half_line(100, 6.0, 2.0);

    const MembershipReport direct = membership_probe(*u, base, params, space, 3);
    bool rellich_growing = false;
    for (const auto& term : direct.terms)
        if (term.name == "rellich") rellich_growing = term.trend == TermTrend::growing;
    CHECK(rellich_growing);

    // transported: w = y^{-3/2} u = e^{-y^2} in the conjugate record; the
    // claim covers the Neumann-space terms (w is not a Rellich-space member)
    auto [tparams, tspace] = conjugate_by_kelvin(params, space, 1.5, 0.0);
    const MembershipReport transported =
        membership_probe(*profile, base, tparams, tspace, 3);
    for (const auto& term : transported.terms) {
        if (term.name == "rellich") continue;
        INFO(term.name);
        CHECK(term.trend == TermTrend::converged);
    }
}

TEST_CASE("boundary trace: exact power, constant, and perturbed power") {
    const GradedMesh mesh = GradedMesh::half_line(400, 4.0, 2.0);
    {
        const GridFunction u = from_values(
            mesh, [](double y) { return 1.0 / std::sqrt(y); }, 0.0, 2.0);
        const TraceEstimate est = boundary_trace(u, 0.5);
        CHECK(est.limit == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(est.confidence <= 1e-10);
    }
    {
        // y^{1/2} on the graded mesh is an exact power of the node index, so
        // the band fit recovers the zero limit directly
        const GridFunction u = from_values(mesh, [](double) { return 1.0; }, 0.0, 2.0);
        CHECK(std::abs(boundary_trace(u, 0.5).limit) <= 1e-10);
    }
    {
        const GridFunction u = from_values(
            mesh, [](double y) { return std::pow(y, -1.5) * (1.0 + y); }, 0.0, 2.0);
        const TraceEstimate est = boundary_trace(u, 1.5);
        CHECK(est.limit == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("trace bands flag non-monotone data") {
    const GradedMesh mesh = GradedMesh::half_line(64, 2.0, 2.0);
    GridFunction u = GridFunction::zero(mesh);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    for (int j = 0; j < mesh.ny; ++j) u.at(j) = noise(rng);
    CHECK(boundary_trace(u, 0.0).low_confidence);
}

TEST_CASE("refinement stability: member functions have Cauchy term norms") {
    std::mt19937_64 rng(12);
    const auto u = std::make_shared<TestFunction>(TestFunction::random(0, rng));
    const OperatorParams params = halfline(1.0, 1.0, 0.0, 0.5);
    const SpaceParams space{2.0, 1.0};
    const GradedMesh base = GradedMesh::half_line(150, 8.0, 2.0);
    const MembershipReport rep = membership_probe(*u, base, params, space, 3);
    for (const auto& term : rep.terms) {
        // second-order space terms; the Rellich weight y^{a2-2} needs u(0) = 0
        // and is not claimed for a generic profile
        if (term.name == "rellich") continue;
        INFO(term.name);
        CHECK(term.trend == TermTrend::converged);
    }
}

TEST_CASE("oblique combination of sheared data reduces to the normal derivative") {
    // with omega = -d/(c(beta_alpha+1)) the sheared function satisfies
    //   y^{(a1+a2)/2-1} d.Dx u~ + c y^{a2-1} Dy u~ = (c y^{a2-1} Dy u) o shear,
    // and the shear is an isometry, so the two weighted norms coincide
    OperatorParams p;
    p.dim_x = 1;
    p.alpha1 = 1.0;
    p.alpha2 = 0.2;
    p.Q = (Matrix(1, 1) << 1.0).finished();
    p.q = (Vector(1) << 0.2).finished();
    p.gamma = 1.0;
    p.d = (Vector(1) << 0.7).finished();
    p.c = 1.3;
    p.b = 0.0;
    const SpaceParams space{2.0, 1.0};
    const double beta_a = p.beta_alpha();
    const Vector omega = (Vector(1) << -p.d(0) / (p.c * (beta_a + 1.0))).finished();

    TestFunction::Term t;
    t.coeff = 1.0;
    t.xexp = {0};
    t.ypow = 1;
    t.decay = 0.6;
    const auto u = std::make_shared<TestFunction>(TestFunction(1, {t}));
    const auto sheared = apply_transform(
        TransformStep(ShiftStep{beta_a, omega}),
        std::static_pointer_cast<const SmoothFunction>(u));

    const GradedMesh mesh = GradedMesh::half_plane(96, 10.0, 1200, 12.0, 2.0);
    const SobolevTermNorms tilted = sobolev_term_norms(*sheared, mesh, p, space);
    const SobolevTermNorms plain = sobolev_term_norms(*u, mesh, p, space);
    CHECK(tilted.oblique ==
          doctest::Approx(std::abs(p.c) * plain.neumann).epsilon(1e-6));
}

TEST_CASE("out-of-box interpolation is flagged") {
    const GradedMesh mesh = GradedMesh::half_line(32, 2.0, 1.0);
    const GridFunction u = from_values(mesh, [](double y) { return y; }, 0.0, 2.0);
    CHECK(u.out_of_box == 0);
    (void)u.interpolate(0.0, 3.5);
    CHECK(u.out_of_box == 1);
}
