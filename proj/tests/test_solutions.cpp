#include <cmath>

#include "doctest.h"
#include "liouville/errors.hpp"
#include "liouville/quadrature.hpp"
#include "liouville/rng.hpp"
#include "liouville/solution.hpp"

using namespace liouville;

TEST_SUITE("solutions") {

TEST_CASE("spherical solution") {
    LiouvilleSolution s = solution_spherical();
    CHECK(s.u({0, 0}) == doctest::Approx(std::log(2.0)));
    CHECK(std::fabs(pde_residual(s, {1.0, 1.0}, 1e-3)) < 1e-5);
    // local log-slope at |x| = 1e4 (u ~ -2 ln|x| + ln 2)
    double r1 = 1e4, r2 = 1e4 * 1.5;
    double slope = (s.u({r2, 0}) - s.u({r1, 0})) / std::log(r2 / r1);
    CHECK(slope == doctest::Approx(-2.0).epsilon(1e-3));
}

TEST_CASE("gamma solutions") {
    LiouvilleSolution s = solution_gamma(0.75);
    CHECK(std::fabs(pde_residual(s, {2.0, 1.0}, 1e-3)) < 1e-5);
    double r1 = 1e4, r2 = 1e4 * 1.5;
    double slope = (s.u({r2, 0}) - s.u({r1, 0})) / std::log(r2 / r1);
    CHECK(slope == doctest::Approx(-1.5).epsilon(1e-2)); // paper: u ~ -2 gamma ln|x|
    CHECK(std::exp(2.0 * solution_gamma(0.5).u({0, 0})) == doctest::Approx(4.0));
    CHECK(std::fabs(pde_residual(solution_gamma(0.6), {1.0, 0.0}, 1e-3)) < 1e-5);
}

TEST_CASE("cylinder b=0 is -ln cosh t in cylinder coordinates") {
    LiouvilleSolution s = solution_cylinder(0, 0);
    for (double t : {-1.5, 0.0, 0.4, 2.0}) {
        double u = s.u(polar_point(std::exp(t), 1.1));
        double expected = -(std::fabs(t) + std::log1p(std::exp(-2 * std::fabs(t))) -
                            std::log(2.0)); // -ln cosh t, stable form
        CHECK(u == doctest::Approx(expected).epsilon(1e-12));
    }
    // linear decay u(t)/|t| -> -1 (the O(1) constant is ln 2, so go far out)
    double t = 200.0;
    CHECK(s.u(polar_point(std::exp(t), 0.3)) / t == doctest::Approx(-1.0).epsilon(1e-2));
    // residual of -(d^2/dt^2) ln cosh + sech^2 in plane coordinates
    CHECK(std::fabs(pde_residual(s, {1.3, 0.7}, 1e-4)) < 1e-5);
}

TEST_CASE("cylinder parameter constraints") {
    CHECK_THROWS_AS(solution_cylinder(-1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(solution_cylinder(0.5, 1.0), ParameterError); // non-integer b with mu>0
    CHECK_NOTHROW(solution_cylinder(0.5, 0.0));
    CHECK_NOTHROW(solution_cylinder(2.0, 3.0));
}

TEST_CASE("cylinder total mass is 4*pi*(b+1)") {
    // substitution s = r^{2b+2} reduces the radial integral to
    // 2*pi*(2b+2) int_0^inf ds/(1+s)^2
    PlanarIntegral q = total_mass(solution_cylinder(1, 0), 1e-6);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(8.0 * M_PI).epsilon(0.01));
}

TEST_CASE("residuals vanish for mu > 0 members") {
    LiouvilleSolution s = solution_cylinder(1, 2.0);
    Rng rng(404);
    for (int i = 0; i < 25; ++i) {
        Vec2 p = rng.annulus_point(0.3, 4.0);
        CHECK(std::fabs(pde_residual(s, p)) < 1e-4);
    }
}

TEST_CASE("the non-solution u = 0 over flat metric has residual exactly 1") {
    auto z = solution_custom(ScalarField::analytic([](Vec2) { return 0.0; }),
                             metric_flat(), "zero");
    CHECK(pde_residual(z, {0.37, -2.1}, 1e-3) == 1.0);
}

TEST_CASE("residual scales O(h^2)") {
    for (const char* name : {"spherical", "gamma:0.8", "cylinder:1:0"}) {
        LiouvilleSolution s = solution_by_name(name);
        double r1 = 0.0, r2 = 0.0;
        Rng rng(7);
        for (int i = 0; i < 20; ++i) {
            Vec2 p = rng.annulus_point(0.5, 2.0);
            r1 = std::max(r1, std::fabs(pde_residual(s, p, 2e-2)));
            r2 = std::max(r2, std::fabs(pde_residual(s, p, 1e-2)));
        }
        CHECK(r1 / r2 > 3.2);
        CHECK(r1 / r2 < 4.8);
    }
}

TEST_CASE("flat-metric scaling covariance") {
    LiouvilleSolution s = solution_spherical();
    for (double lambda : {0.5, 2.0, 10.0}) {
        LiouvilleSolution t = rescale_flat(s, lambda);
        CHECK(std::fabs(pde_residual(t, {0.8, -0.3}, 1e-4)) < 1e-5);
        CHECK(std::fabs(pde_residual(t, {2.0, 1.0}, 1e-4)) < 1e-5);
    }
    CHECK_THROWS_AS(rescale_flat(solution_gamma(0.6), 2.0), UsageError);
}

TEST_CASE("kelvin transform is an involution and preserves solutions") {
    LiouvilleSolution cyl = solution_cylinder(0, 0);
    ScalarField w = *flat_representative(cyl);
    ScalarField wt = kelvin_transform(w);

    // residual of the transformed solution (flat Liouville equation)
    auto as_solution = solution_custom(wt, metric_flat(), "kelvin");
    CHECK(std::fabs(pde_residual(as_solution, {0.5, 0.0}, 1e-4)) < 1e-4);

    ScalarField wtt = kelvin_transform(wt);
    Rng rng(99);
    for (int i = 0; i < 20; ++i) {
        Vec2 p = rng.annulus_point(0.1, 10.0);
        CHECK(wtt(p) == doctest::Approx(w(p)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(wt({0.0, 0.0}), DomainError);
}

TEST_CASE("the spherical solution is kelvin-symmetric on the unit circle") {
    ScalarField w = *flat_representative(solution_spherical());
    ScalarField wt = kelvin_transform(w);
    for (double th : {0.0, 0.7, 2.0, 4.4}) {
        Vec2 p = polar_point(1.0, th);
        CHECK(wt(p) == doctest::Approx(w(p)).epsilon(1e-12));
    }
}

TEST_CASE("cone orders of the cylinder family") {
    // e^{2w} ~ (2b+2)^2 |z|^{2b} near 0 and ~ (2b+2)^2 |z|^{-2b-4} near inf
    ScalarField w1 = *flat_representative(solution_cylinder(1, 0));
    ConeOrderEstimate e1 = cone_order_fit(w1);
    CHECK(e1.beta1 == doctest::Approx(1.0).epsilon(0.05));
    CHECK(e1.beta2 == doctest::Approx(-3.0).epsilon(0.05));
    CHECK(e1.constraints_ok);
    CHECK(e1.conical);

    ScalarField w0 = *flat_representative(solution_cylinder(0, 0));
    ConeOrderEstimate e0 = cone_order_fit(w0);
    CHECK(std::fabs(e0.beta1) < 0.05);
    CHECK(e0.beta2 == doctest::Approx(-2.0).epsilon(0.05));
    CHECK(e0.constraints_ok);
}

TEST_CASE("constant field is flagged: beta2 constraint fails") {
    ScalarField zero = ScalarField::analytic([](Vec2) { return 0.0; });
    ConeOrderEstimate e = cone_order_fit(zero);
    CHECK(std::fabs(e.beta1) < 1e-12);
    CHECK(std::fabs(e.beta2) < 1e-12);
    CHECK_FALSE(e.constraints_ok);
}

TEST_CASE("cone constraints hold across the cylinder family") {
    for (double b : {0.0, 0.5, 1.0, 2.0}) {
        ScalarField w = *flat_representative(solution_cylinder(b, 0));
        ConeOrderEstimate e = cone_order_fit(w);
        CHECK(e.beta1 > -1.0);
        CHECK(e.beta2 < -1.0);
    }
    ScalarField w = *flat_representative(solution_cylinder(1, 0.5));
    ConeOrderEstimate e = cone_order_fit(w);
    CHECK(e.beta1 > -1.0);
    CHECK(e.beta2 < -1.0);
}

TEST_CASE("by-name parsing") {
    CHECK(solution_by_name("cylinder:1:0.5").name.substr(0, 8) == "cylinder");
    CHECK_THROWS_AS(solution_by_name("fourier"), UsageError);
    CHECK_THROWS_AS(solution_by_name("gamma"), UsageError);
}

}  // TEST_SUITE
