#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "locpovm/errors.hpp"
#include "locpovm/geometry.hpp"

using namespace locpovm;
namespace {

Vec pt(double t, double x) {
    Vec p(2);
    p << t, x;
    return p;
}

std::vector<Vec> sample_points(double tlo, double thi, double xlo, double xhi,
                               int count, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> ut(tlo, thi), ux(xlo, xhi);
    std::vector<Vec> out;
    for (int i = 0; i < count; ++i) out.push_back(pt(ut(gen), ux(gen)));
    return out;
}

Ten3 zero_gamma(const Vec&) { return Ten3(2); }

}  // namespace

TEST_CASE("identity chart pulls back to minkowski") {
    const auto chart = identity_chart(2);
    const auto metric = pullback_metric(chart);
    const Vec p = pt(0.3, -1.2);
    const Mat g = metric.g(p);
    CHECK(g(0, 0) == doctest::Approx(-1.0));
    CHECK(g(1, 1) == doctest::Approx(1.0));
    CHECK(std::abs(g(0, 1)) < 1e-14);
    CHECK(christoffel(metric, p).max_abs() < 1e-10);
    CHECK(metric_compatibility_max(metric, p) < 1e-12);
    CHECK(riemann(metric, p).max_abs() < 1e-10);
}

TEST_CASE("dilation chart metric") {
    const double lam = 0.1;
    const auto chart = dilation_chart(lam);
    const auto metric = pullback_metric(chart);

    // on the shared surface t' = 0
    for (double x : {-2.0, 0.0, 0.7, 3.0}) {
        const Mat g = metric.g(pt(0.0, x));
        CHECK(g(0, 0) == doctest::Approx(-1.0 + lam * lam * x * x).epsilon(1e-12));
        CHECK(g(0, 1) == doctest::Approx(-lam * x).epsilon(1e-12));
        CHECK(g(1, 0) == doctest::Approx(-lam * x).epsilon(1e-12));
        CHECK(g(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    }

    // off the surface: g = B^T eta B for B = dx/dx'
    const Vec q = pt(0.4, 0.7);
    const double s = std::exp(-lam * q[0]);
    const Mat g = metric.g(q);
    CHECK(g(0, 0) == doctest::Approx(-1.0 + lam * lam * s * s * q[1] * q[1]));
    CHECK(g(0, 1) == doctest::Approx(-lam * s * s * q[1]));
    CHECK(g(1, 1) == doctest::Approx(s * s));
}

TEST_CASE("rindler chart metric and connection") {
    const auto chart = rindler_chart(1.0);
    const auto metric = pullback_metric(chart);

    const Vec p = pt(0.0, 0.0);
    const Mat g = metric.g(p);
    CHECK(g(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(g(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(g(0, 1)) < 1e-12);

    const Ten3 gamma = christoffel(metric, p);
    CHECK(gamma(0, 0, 1) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gamma(0, 1, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gamma(1, 0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(gamma(1, 1, 1)) < 1e-9);

    // weight-1/2 bundle connection in the spatial slot:
    // (G_1)^a_b = Gamma^a_{1b} - (1/2) delta^a_b * (trace = alpha/R = 1)
    const DensityConnection dc = density_connection(gamma, 0.5);
    CHECK(dc.comp(1, 0, 0) == doctest::Approx(gamma(0, 1, 0) - 0.5).epsilon(1e-9));
    CHECK(dc.comp(1, 1, 1) == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(std::abs(dc.comp(1, 0, 1)) < 1e-9);

    // away from the wedge the chart refuses
    CHECK_THROWS_AS((void)metric.g(pt(0.0, -0.95)), ComputeError);
    CHECK_THROWS_AS((void)rindler_chart(0.0), ConfigError);
    CHECK_THROWS_AS((void)rindler_chart(-1.0), ConfigError);
}

TEST_CASE("geometry laws hold at random points") {
    struct Case {
        Chart chart;
        double tlo, thi, xlo, xhi;
    };
    const Case cases[] = {
        {identity_chart(2), -2.0, 2.0, -3.0, 3.0},
        {dilation_chart(0.1), -1.0, 1.0, -3.0, 3.0},
        {rindler_chart(1.0), -1.0, 1.0, -0.7, 3.0},
    };
    unsigned seed = 1234;
    for (const auto& c : cases) {
        const auto metric = pullback_metric(c.chart);
        const auto pts = sample_points(c.tlo, c.thi, c.xlo, c.xhi, 25, seed++);
        for (const Vec& p : pts) {
            CHECK(metric_compatibility_max(metric, p) < 1e-6);
            CHECK(riemann(metric, p).max_abs() < 1e-5);
        }
        CHECK(connection_transform_check(c.chart, zero_gamma, 0.5, pts) < 1e-6);
    }
}

TEST_CASE("finite differences agree with analytic chart derivatives") {
    const auto chart = dilation_chart(0.15);
    REQUIRE(chart.has_analytic_derivatives());
    const MetricField an(chart, DerivMode::Analytic);
    const MetricField fd(chart, DerivMode::FiniteDifference);
    for (const Vec& p : sample_points(-1, 1, -2, 2, 10, 7)) {
        CHECK((an.g(p) - fd.g(p)).cwiseAbs().maxCoeff() < 1e-9);
        const Ten3 da = an.dg(p), df = fd.dg(p);
        for (size_t i = 0; i < da.v.size(); ++i)
            CHECK(std::abs(da.v[i] - df.v[i]) < 1e-6);
    }
}

TEST_CASE("canonical normal density") {
    {
        const auto metric = pullback_metric(identity_chart(2));
        const auto n = canonical_normal_density(metric, pt(0.0, 1.0));
        CHECK(n.weight == 0.5);
        CHECK(n.n[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(n.n[1]) < 1e-12);
    }
    {
        const double lam = 0.1, x = 0.7;
        const auto metric = pullback_metric(dilation_chart(lam));
        const auto n = canonical_normal_density(metric, pt(0.0, x));
        CHECK(n.n[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(n.n[1] == doctest::Approx(lam * x).epsilon(1e-10));

        const Mat dn = canonical_normal_partials(metric, pt(0.0, x));
        CHECK(dn(0, 0) == doctest::Approx(-lam / 2).epsilon(1e-8));
        CHECK(std::abs(dn(0, 1)) < 1e-10);
        CHECK(dn(1, 0) == doctest::Approx(-lam * lam * x / 2).epsilon(1e-8));
        CHECK(dn(1, 1) == doctest::Approx(lam).epsilon(1e-8));

        // chain-rule partials must agree with differencing the normal itself
        const double h = 1e-6;
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu) {
                Vec hi = pt(0.0, x), lo = pt(0.0, x);
                hi[nu] += h;
                lo[nu] -= h;
                const double fd = (canonical_normal_density(metric, hi).n[mu] -
                                   canonical_normal_density(metric, lo).n[mu]) /
                                  (2 * h);
                CHECK(dn(mu, nu) == doctest::Approx(fd).epsilon(5e-7));
            }
    }
    {
        const auto metric = pullback_metric(rindler_chart(1.0));
        const double x = 0.5, R = 1.5;
        const auto n = canonical_normal_density(metric, pt(0.0, x));
        CHECK(n.n[0] == doctest::Approx(1.0 / std::sqrt(R)).epsilon(1e-10));
        CHECK(std::abs(n.n[1]) < 1e-10);
        const Mat dn = canonical_normal_partials(metric, pt(0.0, x));
        CHECK(dn(0, 1) == doctest::Approx(-0.5 * std::pow(R, -1.5)).epsilon(1e-8));
    }
    {
        // time and space swapped: the slice is not spacelike
        const auto swap = custom_chart({"x", "t"}, {"x", "t"}, {});
        CHECK_THROWS_AS(
            (void)canonical_normal_density(pullback_metric(swap), pt(0.0, 0.3)),
            ComputeError);
    }
}

TEST_CASE("density vector transform") {
    // pure spatial rescale x' = 2x: weight-1/2 component contracts by 2^{-1/2}
    const auto scale = custom_chart({"t", "2*x"}, {"t", "x/2"}, {});
    const auto field = constant_density_field(pt(1.0, 0.0), 0.5);
    const auto moved = transform_density_vector(scale, field);
    const Vec v = moved.eval(pt(0.0, 1.3));
    CHECK(v[0] == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-9));
    CHECK(std::abs(v[1]) < 1e-9);

    // dilation chart: the cartesian-constant normal maps to (1, lambda x') on
    // the shared surface
    const double lam = 0.1;
    const auto dil = dilation_chart(lam);
    const auto in_dil = transform_density_vector(dil, field);
    const Vec w = in_dil.eval(pt(0.0, 0.7));
    CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w[1] == doctest::Approx(lam * 0.7).epsilon(1e-9));

    // round trip through the inverse chart restores the original components
    const auto back = transform_density_vector(inverse_chart(dil), in_dil);
    for (const Vec& p : sample_points(-1, 1, -2, 2, 5, 3)) {
        const Vec r = back.eval(p);
        CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(std::abs(r[1]) < 1e-8);
    }
}

TEST_CASE("covariant constancy of the transported normal") {
    const auto field = constant_density_field(pt(1.0, 0.0), 0.5);
    {
        const auto chart = identity_chart(2);
        const auto metric = pullback_metric(chart);
        const auto moved = transform_density_vector(chart, field);
        const Mat D = density_covariant_derivative(moved, metric, pt(0.0, 0.4));
        CHECK(D.cwiseAbs().maxCoeff() < 1e-12);
    }
    {
        const auto chart = dilation_chart(0.1);
        const auto metric = pullback_metric(chart);
        const auto moved = transform_density_vector(chart, field);
        for (const Vec& p : sample_points(-0.5, 0.5, -2, 2, 10, 5)) {
            const Mat D = density_covariant_derivative(moved, metric, p);
            CHECK(D.cwiseAbs().maxCoeff() < 1e-6);
        }
    }
    {
        // rindler's canonical normal is genuinely not parallel: the
        // covariant derivative has a fixed alpha*sqrt(R) time component
        const auto chart = rindler_chart(1.0);
        const auto metric = pullback_metric(chart);
        const DensityVectorField canon{
            0.5, 2, [&](const Vec& p) { return canonical_normal_density(metric, p).n; }};
        const Mat D = density_covariant_derivative(canon, metric, pt(0.0, 0.0));
        CHECK(D(1, 0) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(D.cwiseAbs().maxCoeff() > 0.1);
    }
}

TEST_CASE("custom chart reproduces the built-in dilation") {
    const auto ref = dilation_chart(0.1);
    const auto cus = custom_chart(
        {"t", "exp(lam*t)*x"}, {"t", "exp(-lam*t)*x"},
        {{"lam", 0.1}});
    const auto mr = pullback_metric(ref);
    const auto mc = pullback_metric(cus);
    for (const Vec& p : sample_points(-1, 1, -2, 2, 8, 11)) {
        CHECK((mr.g(p) - mc.g(p)).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(metric_compatibility_max(mc, p) < 1e-6);
        // three stacked difference levels: looser flatness bound than the
        // analytic charts get
        CHECK(riemann(mc, p).max_abs() < 1e-4);
    }
    CHECK_THROWS_AS((void)custom_chart({"t"}, {"t", "x"}, {}), ConfigError);
}

TEST_CASE("chart composition and inversion") {
    const auto a = dilation_chart(0.1);
    const auto b = custom_chart({"t", "2*x"}, {"t", "x/2"}, {});
    const auto ab = compose_charts(a, b);

    const Vec p = pt(0.3, 0.8);
    const Vec direct = b.map_forward(a.map_forward(p));
    const Vec composed = ab.map_forward(p);
    CHECK((direct - composed).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((ab.map_inverse(composed) - p).cwiseAbs().maxCoeff() < 1e-12);

    // jacobians multiply; forward o inverse is the identity map
    const Mat Jf = ab.jac_forward(p);
    const Mat Jb = ab.jac_inverse(composed);
    CHECK((Jf * Jb - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-7);

    const auto inv = inverse_chart(a);
    const auto ai = compose_charts(a, inv);
    for (const Vec& q : sample_points(-1, 1, -2, 2, 5, 13)) {
        CHECK((ai.map_forward(q) - q).cwiseAbs().maxCoeff() < 1e-10);
    }

    // transforming through the composite equals transforming twice
    const auto field = constant_density_field(pt(1.0, 0.0), 0.5);
    const auto once = transform_density_vector(ab, field);
    const auto twice = transform_density_vector(b, transform_density_vector(a, field));
    for (const Vec& q : sample_points(-0.5, 0.5, -1, 1, 5, 17)) {
        const Vec u = once.eval(q), v = twice.eval(q);
        CHECK((u - v).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("expression language") {
    const std::map<std::string, double> vars{{"t", 0.5}, {"x", 2.0}};
    CHECK(Expr::parse("2+3*4^2").eval({}) == doctest::Approx(50.0));
    CHECK(Expr::parse("-x^2").eval(vars) == doctest::Approx(-4.0));
    CHECK(Expr::parse("2^3^2").eval({}) == doctest::Approx(512.0));  // right assoc
    CHECK(Expr::parse("exp(0)+cos(0)").eval({}) == doctest::Approx(2.0));
    CHECK(Expr::parse("sinh(t)*x").eval(vars) ==
          doctest::Approx(std::sinh(0.5) * 2.0));
    CHECK(Expr::parse("(1+2)/4").eval({}) == doctest::Approx(0.75));

    CHECK_THROWS_AS((void)Expr::parse("tan(x)"), ConfigError);   // unknown function
    CHECK_THROWS_AS((void)Expr::parse("1+"), ConfigError);       // dangling operator
    CHECK_THROWS_AS((void)Expr::parse("(1+2"), ConfigError);     // unbalanced paren
    CHECK_THROWS_AS((void)Expr::parse("1 2"), ConfigError);      // trailing input
    CHECK_THROWS_AS((void)Expr::parse("x").eval({}), ConfigError);  // unbound var
}

TEST_CASE("dilation domain guard") {
    const auto chart = dilation_chart(0.1);
    CHECK(chart.contains(pt(0.0, 5.0)));
    CHECK(chart.contains(pt(19.0, 0.0)));   // |lambda t'| = 1.9
    CHECK_FALSE(chart.contains(pt(21.0, 0.0)));  // |lambda t'| = 2.1
    const auto rin = rindler_chart(1.0);
    CHECK(rin.contains(pt(0.0, 0.0)));
    CHECK_FALSE(rin.contains(pt(0.0, -0.95)));  // 1 + alpha x' < 0.1
}
