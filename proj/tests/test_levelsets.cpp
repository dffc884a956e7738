#include <cmath>

#include "doctest.h"
#include "liouville/errors.hpp"
#include "liouville/levelset.hpp"
#include "liouville/quadrature.hpp"

using namespace liouville;

namespace {

double shoelace(const Contour& c) {
    double a = 0.0;
    for (size_t k = 0; k + 1 < c.points.size(); ++k)
        a += c.points[k].x * c.points[k + 1].y - c.points[k + 1].x * c.points[k].y;
    return 0.5 * a;
}

}  // namespace

TEST_SUITE("levelsets") {

TEST_CASE("paraboloid level set is a circle of radius 1") {
    auto u = ScalarField::analytic([](Vec2 p) { return -p.norm2(); });
    GridSpec g = GridSpec::cartesian(2.0, 128);
    ContourSet cs = extract_levelset(u, g, -1.0);
    REQUIRE(cs.contours.size() == 1);
    const Contour& c = cs.contours[0];
    CHECK(c.closed);
    CHECK(c.points.size() > 100);
    double h = g.step_x();
    for (const Vec2& q : c.points) CHECK(std::fabs(q.norm() - 1.0) < 2.0 * h);
    CHECK(cs.truncation_length == 0.0);
}

TEST_CASE("spherical solution: zero level set is the unit circle, oriented ccw") {
    LiouvilleSolution s = solution_spherical();
    GridSpec g = GridSpec::cartesian(2.0, 256);
    ContourSet cs = extract_levelset(s.u, g, 0.0);
    REQUIRE(cs.contours.size() == 1);
    for (const Vec2& q : cs.contours[0].points)
        CHECK(std::fabs(q.norm() - 1.0) < 2.0 * g.step_x());
    // upper level set on the left means ccw around the disk
    CHECK(shoelace(cs.contours[0]) == doctest::Approx(M_PI).epsilon(1e-3));
}

TEST_CASE("threshold outside the sampled range is an error") {
    auto u = ScalarField::analytic([](Vec2 p) { return -p.norm2(); });
    GridSpec g = GridSpec::cartesian(2.0, 64);
    CHECK_THROWS_AS(extract_levelset(u, g, 1.0), LevelSetRangeError);
    CHECK_THROWS_AS(extract_levelset(u, g, -100.0), LevelSetRangeError);
}

TEST_CASE("metric lengths of circles") {
    // flat unit circle at 512^2: 2*pi within 0.5%
    auto u = ScalarField::analytic([](Vec2 p) { return -p.norm2(); });
    GridSpec g = GridSpec::cartesian(1.5, 512);
    ContourSet cs = extract_levelset(u, g, -1.0);
    CHECK(metric_length(cs, metric_flat()) == doctest::Approx(2 * M_PI).epsilon(0.005));

    // cylinder metric: every circle |z| = rho has length 2*pi
    auto v = ScalarField::analytic([](Vec2 p) { return -std::log(p.norm()); },
                                   {Vec2{0, 0}});
    for (double rho : {0.5, 1.0, 2.0}) {
        GridSpec pg = GridSpec::polar(rho / 4.0, rho * 4.0, 256, true);
        ContourSet cc = extract_levelset(v, pg, -std::log(rho));
        CHECK(metric_length(cc, metric_cylinder_pullback()) ==
              doctest::Approx(2 * M_PI).epsilon(0.01));
    }

    // spherical metric: e^{f(1)} = 1, so the unit circle again measures 2*pi
    ContourSet su = extract_levelset(u, g, -1.0);
    CHECK(metric_length(su, metric_spherical()) ==
          doctest::Approx(2 * M_PI).epsilon(0.01));
}

TEST_CASE("metric areas") {
    auto u = ScalarField::analytic([](Vec2 p) { return -p.norm2(); });
    GridSpec g = GridSpec::cartesian(2.5, 512);
    CHECK(metric_area(u, g, -4.0, metric_flat()) ==
          doctest::Approx(4 * M_PI).epsilon(0.01)); // disk of radius 2

    LiouvilleSolution s = solution_spherical();
    GridSpec g2 = GridSpec::cartesian(1.5, 512);
    CHECK(metric_area(s.u, g2, 0.0, metric_flat()) ==
          doctest::Approx(M_PI).epsilon(0.01)); // unit disk

    // annulus 1 < |z| < e in the cylinder metric: area 2*pi ln(e) = 2*pi
    auto band = ScalarField::analytic(
        [](Vec2 p) { return -std::fabs(std::log(p.norm()) - 0.5); }, {Vec2{0, 0}});
    GridSpec pg = GridSpec::polar(std::exp(-1.0), std::exp(2.0), 512, true);
    CHECK(metric_area(band, pg, -0.5, metric_cylinder_pullback()) ==
          doctest::Approx(2 * M_PI).epsilon(0.01));
}

TEST_CASE("spherical F(t) and flux at t = 0 are both 2*pi") {
    LiouvilleSolution s = solution_spherical();
    const double ts[] = {0.0};
    LevelSetProfile prof = levelset_profile(s, 1.0, ts, 512);
    REQUIRE(prof.rows.size() == 1);
    const LevelSetRow& row = prof.rows[0];
    // closed-form radial integral of 4/(1+r^2)^2 over the unit disk
    CHECK(row.mass == doctest::Approx(2 * M_PI).epsilon(0.01));
    // |grad u|(1) * 2*pi = 2*pi
    CHECK(row.flux == doctest::Approx(2 * M_PI).epsilon(0.01));
    CHECK(row.iso_ratio == doctest::Approx(1.0).epsilon(0.02));
    CHECK_FALSE(row.advisory);
}

TEST_CASE("isoperimetric scan: spherical is the equality case") {
    LiouvilleSolution s = solution_spherical();
    std::vector<double> ts = default_thresholds(s, 10);
    LevelSetProfile prof = isoperimetric_check(s, 1.0, ts, 512);
    for (const LevelSetRow& row : prof.rows) {
        CHECK(row.iso_ratio == doctest::Approx(1.0).epsilon(0.02));
        CHECK(row.flux == doctest::Approx(row.mass).epsilon(0.02));
    }
}

TEST_CASE("isoperimetric scan: gamma(0.75) stays above the bound") {
    LiouvilleSolution s = solution_gamma(0.75);
    std::vector<double> ts = default_thresholds(s, 10);
    LevelSetProfile prof = isoperimetric_check(s, 0.5, ts, 512);
    double prev_area = std::numeric_limits<double>::infinity();
    double prev_mass = std::numeric_limits<double>::infinity();
    for (const LevelSetRow& row : prof.rows) {
        CHECK(row.iso_ratio >= 0.98);
        // A and F nonincreasing in t
        CHECK(row.area_g <= prev_area * 1.001);
        CHECK(row.mass <= prev_mass * 1.001);
        prev_area = row.area_g;
        prev_mass = row.mass;
        CHECK(row.flux == doctest::Approx(row.mass).epsilon(0.02));
    }
}

TEST_CASE("cylinder scan: annular level sets, vacuous isoperimetric status") {
    LiouvilleSolution s = solution_cylinder(0, 0);
    std::vector<double> ts = default_thresholds(s, 8);
    LevelSetProfile prof = levelset_profile(s, 0.0, ts, 512);
    CHECK(prof.isoperimetric_vacuous);
    for (const LevelSetRow& row : prof.rows) {
        CHECK(std::isnan(row.iso_ratio));
        CHECK(row.flux == doctest::Approx(row.mass).epsilon(0.02));
        // each boundary circle has cylinder length 2*pi
        CHECK(row.length_g == doctest::Approx(4 * M_PI).epsilon(0.02));
    }
    // F(t) -> total mass 4*pi*(b+1) as t -> -inf
    CHECK(prof.rows.front().mass == doctest::Approx(4 * M_PI).epsilon(0.01));
}

TEST_CASE("ode inequality: equality for spherical, margin for gamma") {
    LiouvilleSolution sph = solution_spherical();
    std::vector<double> ts = default_thresholds(sph, 12);
    LevelSetProfile prof = levelset_profile(sph, 1.0, ts, 512);
    for (const LevelSetRow& row : prof.rows) {
        CHECK(std::fabs(row.ode_margin_rel) <= 0.03); // LHS = RHS within 3%
    }

    LiouvilleSolution gam = solution_gamma(0.75);
    std::vector<double> ts2 = default_thresholds(gam, 12);
    LevelSetProfile prof2 = levelset_profile(gam, 0.5, ts2, 512);
    for (const LevelSetRow& row : prof2.rows) CHECK(row.ode_margin_rel >= -0.03);

    // halving beta relaxes the bound: raw margins strictly larger
    std::vector<OdeMargin> full = ode_inequality_check(prof2, 0.5);
    std::vector<OdeMargin> half = ode_inequality_check(prof2, 0.25);
    for (size_t k = 0; k < full.size(); ++k)
        CHECK(half[k].rhs - half[k].lhs > full[k].rhs - full[k].lhs);
}

TEST_CASE("coarea consistency along the profile") {
    LiouvilleSolution s = solution_gamma(0.6);
    std::vector<double> ts = default_thresholds(s, 24);
    LevelSetProfile prof = levelset_profile(s, 0.2, ts, 384);
    // F(t1) - F(t2) = int_{t1}^{t2} e^{2t} invflux(t) dt  (trapezoid on rows)
    size_t a = 4, b = 20;
    double integral = 0.0;
    for (size_t k = a; k < b; ++k) {
        double f1 = std::exp(2 * prof.rows[k].t) * prof.rows[k].inv_flux;
        double f2 = std::exp(2 * prof.rows[k + 1].t) * prof.rows[k + 1].inv_flux;
        integral += 0.5 * (f1 + f2) * (prof.rows[k + 1].t - prof.rows[k].t);
    }
    double diff = prof.rows[a].mass - prof.rows[b].mass;
    CHECK(integral == doctest::Approx(diff).epsilon(0.03));
}

TEST_CASE("integrated inequality: total mass squared vs area integral") {
    // -F(-inf)^2 <= -8 pi beta int e^{2t} A dt, equality for the spherical pair
    LiouvilleSolution s = solution_spherical();
    double mass = total_mass(s, 1e-8).value;
    int nsteps = 160;
    double lo = s.u_max - 16.0, hi = s.u_max - 0.005;
    double integral = 0.0;
    double prev_val = 0.0, prev_t = lo;
    for (int k = 0; k <= nsteps; ++k) {
        double t = lo + (hi - lo) * k / nsteps;
        GridSpec chart = levelset_chart(s, t, 256);
        double area = metric_area(s.u, chart, t, s.metric);
        double val = std::exp(2 * t) * area;
        if (k > 0) integral += 0.5 * (prev_val + val) * (t - prev_t);
        prev_val = val;
        prev_t = t;
    }
    double lhs = mass * mass;
    double rhs = 8 * M_PI * 1.0 * integral;
    CHECK(lhs >= rhs * (1 - 0.03));
    CHECK(lhs == doctest::Approx(rhs).epsilon(0.02)); // equality case
}

TEST_CASE("boundary truncation is reported for clipped level sets") {
    // the level circle (radius sqrt(5)) pokes out of the [-2,2]^2 box
    auto u = ScalarField::analytic([](Vec2 p) { return 1.0 - 0.2 * p.norm2(); });
    GridSpec g = GridSpec::cartesian(2.0, 128);
    ContourSet cs = extract_levelset(u, g, 0.0);
    REQUIRE_FALSE(cs.contours.empty());
    for (const Contour& c : cs.contours) CHECK_FALSE(c.closed);
    CHECK(cs.truncation_length > 0.1);

    // a level set well inside the box is not truncated
    ContourSet inside = extract_levelset(u, g, 0.6);
    CHECK(inside.truncation_length == 0.0);
    CHECK(inside.contours.size() == 1);
    CHECK(inside.contours[0].closed);
}

}  // TEST_SUITE
