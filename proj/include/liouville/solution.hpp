#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "liouville/metric.hpp"

namespace liouville {

// A (u, metric) pair intended to solve Delta u + e^{2f} e^{2u} = 0; whether it
// does is tested, never assumed.
struct LiouvilleSolution {
    std::string name = "custom";
    ScalarField u;
    ConformalMetric metric;
    // 2f+2u, in a form stable at large |x| (and near punctures).
    std::function<double(Vec2)> log_density;
    // sup of u over the domain and a point attaining it (threshold ladders).
    double u_max = 0.0;
    Vec2 u_argmax{0.0, 0.0};

    // e^{2f+2u} as a plain evaluator; extends continuously by 0 at punctures.
    std::function<double(Vec2)> density() const;
};

// u = ln(2/(1+|x|^2)) over the flat metric; the round-sphere solution.
LiouvilleSolution solution_spherical();
// Theorem-style cylinder family on the punctured plane,
// e^{2u} = (2b+2)^2 |z|^{2b+2} / (|1+mu z^{b+1}|^2 + |z|^{2b+2})^2,
// over the cylinder pullback metric. Requires mu = 0 or b a nonnegative
// integer.
LiouvilleSolution solution_cylinder(double b, double mu);
// u = ln 2 - gamma ln(1+|x|^2) over metric_gamma(gamma).
LiouvilleSolution solution_gamma(double gamma);
// Arbitrary pair, e.g. for negative tests.
LiouvilleSolution solution_custom(ScalarField u, ConformalMetric metric,
                                  std::string name = "custom");

// Parse "spherical", "gamma:0.75", "cylinder:1:0".
LiouvilleSolution solution_by_name(std::string_view spec);

// The flat punctured-plane representative w with e^{2w} = e^{2f+2u} and
// Delta w + e^{2w} = 0, when the pair has one (spherical and cylinder
// families; gamma metrics are not flat so they do not).
std::optional<ScalarField> flat_representative(const LiouvilleSolution& sol);

// Delta_fd u + e^{2f} e^{2u} at a point.
double pde_residual(const LiouvilleSolution& sol, Vec2 p, double h);
double pde_residual(const LiouvilleSolution& sol, Vec2 p);

// w~(x) = w(x/|x|^2) - 2 ln|x| (maps punctured-plane Liouville solutions to
// Liouville solutions, swapping 0 and infinity; an involution).
ScalarField kelvin_transform(const ScalarField& w);

// u_lambda(x) = u(lambda x) + ln(lambda): solution-preserving over flat
// metrics.
LiouvilleSolution rescale_flat(const LiouvilleSolution& sol, double lambda);

struct ConeOrderEstimate {
    double beta1 = 0.0;   // slope of angular-averaged w against ln|x| near 0
    double beta2 = 0.0;   // slope near infinity
    double residual1 = 0.0;
    double residual2 = 0.0;
    bool constraints_ok = false; // beta1 > -1 and beta2 < -1
    bool conical = false;        // fit residuals under threshold
};

ConeOrderEstimate cone_order_fit(const ScalarField& w, std::span<const double> inner_radii,
                                 std::span<const double> outer_radii);
ConeOrderEstimate cone_order_fit(const ScalarField& w);

}  // namespace liouville
