#include <cmath>

#include "doctest.h"
#include "liouville/errors.hpp"
#include "liouville/geodesics.hpp"
#include "liouville/rng.hpp"

using namespace liouville;

TEST_SUITE("geodesics") {

TEST_CASE("radial distance basics") {
    CHECK(radial_distance(metric_flat(), 7.0) == doctest::Approx(7.0).epsilon(1e-9));
    // spherical: int_0^R 2/(1+s^2) ds = 2 atan R -> pi
    CHECK(radial_distance(metric_spherical(), 1e8) == doctest::Approx(M_PI).epsilon(1e-6));
    // gamma(0.75): ~ sqrt(gamma) R^{2 gamma - 1}/(2 gamma - 1)
    double r = radial_distance(metric_gamma(0.75), 1e4);
    CHECK(std::fabs(r - std::sqrt(0.75) * 100.0 / 0.5) < 0.02 * r);
    CHECK_THROWS_AS(radial_distance(metric_cylinder_pullback(), 2.0), UsageError);
}

TEST_CASE("cell fraction: exact on half-planes, sane on saddles") {
    CHECK(cell_fraction_above(1, 1, 1, 1, 0.0) == 1.0);
    CHECK(cell_fraction_above(-1, -1, -1, -1, 0.0) == 0.0);
    // linear field x: crossing at x = 0.5
    CHECK(cell_fraction_above(-1, 1, 1, -1, 0.0) == doctest::Approx(0.5));
    // one corner in: triangle of area 1/8 for crossings at midpoints
    CHECK(cell_fraction_above(1, -1, -3, -1, 0.0) == doctest::Approx(0.125));
    // saddle, center average negative: two triangles
    CHECK(cell_fraction_above(1, -2, 1, -2, 0.0) ==
          doctest::Approx(2 * 0.5 * (1.0 / 3) * (1.0 / 3)));
    // complement consistency
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
        double c = rng.uniform(-1, 1), d = rng.uniform(-1, 1);
        double f1 = cell_fraction_above(a, b, c, d, 0.1);
        double f2 = cell_fraction_above(-a, -b, -c, -d, -0.1);
        CHECK(f1 + f2 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("eikonal on the flat metric reproduces |x| within 1%") {
    GridSpec g = GridSpec::cartesian(10.0, 512);
    DistanceField d = eikonal_distance(metric_flat(), g, {0.0, 0.0});
    double worst = 0.0;
    for (int j = 0; j < g.resolution; j += 17)
        for (int i = 0; i < g.resolution; i += 17) {
            Vec2 p = g.node_point(i, j);
            if (p.norm() < 0.5) continue;
            worst = std::max(worst, std::fabs(d.node(i, j) - p.norm()) / p.norm());
        }
    CHECK(worst < 0.01);
}

TEST_CASE("eikonal matches the radial oracle on gamma(0.6)") {
    GridSpec g = GridSpec::cartesian(20.0, 512);
    DistanceField d = eikonal_distance(metric_gamma(0.6), g, {0.0, 0.0});
    Rng rng(31);
    for (int k = 0; k < 40; ++k) {
        Vec2 p = rng.annulus_point(1.0, 18.0);
        double oracle = radial_distance(metric_gamma(0.6), p.norm());
        CHECK(std::fabs(d(p) - oracle) <= 0.02 * oracle);
    }
}

TEST_CASE("eikonal on the cylinder: axial distance is |delta ln r|") {
    GridSpec g = GridSpec::polar(std::exp(-5.0), std::exp(5.0), 512, true);
    DistanceField d = eikonal_distance(metric_cylinder_pullback(), g, {1.0, 0.0});
    for (double T : {1.0, 2.0, 3.0}) {
        CHECK(d({std::exp(T), 0.0}) == doctest::Approx(T).epsilon(0.02));
    }
    // wrap-around: the far side of the circle is at distance pi
    CHECK(d({-1.0, 0.0}) == doctest::Approx(M_PI).epsilon(0.02));
}

TEST_CASE("eikonal usage errors") {
    GridSpec g = GridSpec::cartesian(5.0, 64);
    CHECK_THROWS_AS(eikonal_distance(metric_flat(), g, {20.0, 0.0}), UsageError);
    CHECK_THROWS_AS(
        eikonal_distance(metric_cylinder_pullback(), g, {1.0, 0.0}), UsageError);
    GridSpec pg = GridSpec::polar(0.1, 10.0, 64, true);
    CHECK_THROWS_AS(
        eikonal_distance(metric_cylinder_pullback(), pg, {0.0, 0.0}), UsageError);
}

TEST_CASE("fast-marching output has no interior local maxima") {
    GridSpec g = GridSpec::cartesian(6.0, 128);
    DistanceField d = eikonal_distance(metric_gamma(0.75), g, {0.0, 0.0});
    int n = g.resolution;
    for (int j = 1; j < n - 1; ++j)
        for (int i = 1; i < n - 1; ++i) {
            double c = d.node(i, j);
            double m = std::min(std::min(d.node(i - 1, j), d.node(i + 1, j)),
                                std::min(d.node(i, j - 1), d.node(i, j + 1)));
            CHECK(c >= m - 1e-12); // no isolated spikes
        }
}

TEST_CASE("eikonal distance is 1-Lipschitz against the metric edge length") {
    GridSpec g = GridSpec::cartesian(6.0, 128);
    ConformalMetric m = metric_gamma(0.75);
    DistanceField d = eikonal_distance(m, g, {0.0, 0.0});
    int n = g.resolution;
    double h = g.step_x();
    for (int j = 1; j < n - 1; j += 3)
        for (int i = 1; i + 1 < n - 1; i += 3) {
            Vec2 a = g.node_point(i, j), b = g.node_point(i + 1, j);
            double edge = 0.5 * (m.length_weight(a) + m.length_weight(b)) * h;
            CHECK(std::fabs(d.node(i + 1, j) - d.node(i, j)) <= edge * 1.05 + 1e-9);
        }
}

TEST_CASE("eikonal residual |grad r| = e^f away from base") {
    GridSpec g = GridSpec::cartesian(6.0, 256);
    ConformalMetric m = metric_gamma(0.9);
    DistanceField d = eikonal_distance(m, g, {0.0, 0.0});
    int n = g.resolution;
    double h = g.step_x();
    int bad = 0, tot = 0;
    for (int j = 8; j < n - 8; j += 5)
        for (int i = 8; i < n - 8; i += 5) {
            Vec2 p = g.node_point(i, j);
            if (p.norm() < 1.0) continue;
            double gx = (d.node(i + 1, j) - d.node(i - 1, j)) / (2 * h);
            double gy = (d.node(i, j + 1) - d.node(i, j - 1)) / (2 * h);
            double lhs = std::hypot(gx, gy);
            double rhs = m.length_weight(p);
            ++tot;
            if (std::fabs(lhs - rhs) > 0.05 * rhs) ++bad;
        }
    CHECK(bad < tot / 20); // small fraction near shocks/diagonals is fine
}

TEST_CASE("ball areas") {
    DistanceField flat = DistanceField::radial_oracle(metric_flat());
    CHECK(ball_area(flat, 2.0) == doctest::Approx(4.0 * M_PI).epsilon(0.01));

    // whole round sphere: area 4*pi as t -> pi
    DistanceField sph = DistanceField::radial_oracle(metric_spherical());
    CHECK(ball_area(sph, M_PI - 0.02) == doctest::Approx(4.0 * M_PI).epsilon(0.02));

    // monotone in t
    DistanceField gam = DistanceField::radial_oracle(metric_gamma(0.75));
    double prev = 0.0;
    for (double t : {1.0, 2.0, 4.0, 8.0}) {
        double a = ball_area(gam, t);
        CHECK(a > prev);
        prev = a;
    }

    // eikonal route agrees with the oracle on the flat metric
    GridSpec g = GridSpec::cartesian(4.0, 256);
    DistanceField d = eikonal_distance(metric_flat(), g, {0.0, 0.0});
    CHECK(ball_area(d, 2.0) == doctest::Approx(4.0 * M_PI).epsilon(0.01));
}

TEST_CASE("avr: flat, gamma family, cylinder") {
    AvrReport flat = avr(metric_flat());
    CHECK(flat.beta_area == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(flat.beta_gb == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(flat.gap < 1e-2);

    AvrReport g75 = avr(metric_gamma(0.75));
    CHECK(g75.beta_area == doctest::Approx(0.5).epsilon(0.03));
    CHECK(g75.beta_gb == doctest::Approx(0.5).epsilon(0.01));
    CHECK(g75.gap <= 0.03);

    AvrReport cyl = avr(metric_cylinder_pullback(), 0.0, 1e-7, 512);
    CHECK_FALSE(cyl.gb_applicable);
    CHECK(std::fabs(cyl.beta_area) < 0.02);
    CHECK(cyl.beta() == cyl.beta_area);

    CHECK_THROWS_AS(avr(metric_spherical()), CompletenessError);
}

TEST_CASE("lemma HLT triple agreement on the built-ins") {
    for (double g : {0.6, 0.75, 0.9}) {
        AvrReport rep = avr(metric_gamma(g));
        double slope = distance_slope(metric_gamma(g));
        CHECK(rep.beta_gb == doctest::Approx(2 * g - 1).epsilon(0.01));
        CHECK(std::fabs(rep.beta_area - rep.beta_gb) <= 0.03);
        CHECK(std::fabs(slope - rep.beta_gb) <= 0.03);
    }
    CHECK(distance_slope(metric_flat()) == doctest::Approx(1.0).epsilon(1e-2));
}

}  // TEST_SUITE
