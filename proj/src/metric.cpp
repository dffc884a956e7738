#include "liouville/metric.hpp"

#include <cmath>
#include <charconv>
#include <limits>

#include "liouville/errors.hpp"
#include "liouville/fd.hpp"
#include "liouville/quad1d.hpp"

namespace liouville {

double ConformalMetric::length_weight(Vec2 p) const { return std::exp(f(p)); }

double ConformalMetric::area_weight(Vec2 p) const { return std::exp(2.0 * f(p)); }

double ConformalMetric::gauss_curvature(Vec2 p) const {
    if (curvature) return (*curvature)(p);
    return gauss_curvature_fd(p, default_fd_step(f, p));
}

double ConformalMetric::gauss_curvature_fd(Vec2 p, double h) const {
    return -std::exp(-2.0 * f(p)) * laplacian_fd(f, p, h);
}

ConformalMetric metric_flat() {
    ConformalMetric m;
    m.name = "flat";
    m.domain = ConformalMetric::Domain::plane;
    m.f = ScalarField::analytic([](Vec2) { return 0.0; });
    m.curvature = ScalarField::analytic([](Vec2) { return 0.0; });
    m.radial = true;
    return m;
}

ConformalMetric metric_gamma(double gamma) {
    if (!(gamma >= 0.5 && gamma < 1.0))
        throw ParameterError("gamma metric needs gamma in [1/2, 1)");
    ConformalMetric m;
    m.name = "gamma:" + std::to_string(gamma);
    m.domain = ConformalMetric::Domain::plane;
    // e^{2f} = gamma/(1+|x|^2)^{2-2 gamma}
    m.f = ScalarField::analytic([gamma](Vec2 p) {
        return 0.5 * std::log(gamma) - (1.0 - gamma) * log1p_sq(p.norm());
    });
    m.curvature = ScalarField::analytic([gamma](Vec2 p) {
        return 4.0 * (1.0 - gamma) / gamma * std::exp(-2.0 * gamma * log1p_sq(p.norm()));
    });
    m.radial = true;
    return m;
}

ConformalMetric metric_cylinder_pullback() {
    ConformalMetric m;
    m.name = "cylinder";
    m.domain = ConformalMetric::Domain::punctured_plane;
    m.f = ScalarField::analytic([](Vec2 p) { return -std::log(p.norm()); },
                                {Vec2{0.0, 0.0}});
    m.curvature = ScalarField::analytic([](Vec2) { return 0.0; }, {Vec2{0.0, 0.0}});
    m.radial = true;
    return m;
}

ConformalMetric metric_spherical() {
    ConformalMetric m;
    m.name = "spherical";
    m.domain = ConformalMetric::Domain::plane;
    m.f = ScalarField::analytic(
        [](Vec2 p) { return std::log(2.0) - log1p_sq(p.norm()); });
    m.curvature = ScalarField::analytic([](Vec2) { return 1.0; });
    m.radial = true;
    return m;
}

ConformalMetric metric_by_name(std::string_view spec) {
    auto colon = spec.find(':');
    std::string_view head = spec.substr(0, colon);
    if (head == "flat") return metric_flat();
    if (head == "spherical") return metric_spherical();
    if (head == "cylinder") return metric_cylinder_pullback();
    if (head == "gamma") {
        if (colon == std::string_view::npos)
            throw UsageError("gamma metric needs a parameter, e.g. gamma:0.75");
        double g = 0.0;
        std::string_view arg = spec.substr(colon + 1);
        auto res = std::from_chars(arg.data(), arg.data() + arg.size(), g);
        if (res.ec != std::errc())
            throw UsageError("could not parse gamma value in metric spec");
        return metric_gamma(g);
    }
    throw UsageError("unknown metric '" + std::string(spec) +
                     "' (valid: flat, gamma:<g>, cylinder, spherical)");
}

bool is_complete(const ConformalMetric& metric) {
    if (!metric.radial)
        throw UsageError("completeness check implemented for radial metrics");
    const ScalarField f = metric.f;
    auto weight = [f](double s) { return std::exp(f({s, 0.0})); };
    // Outward ray: length must keep growing under doubling.
    double prev = integrate_1d(weight, 1.0, 16.0, 1e-9, 1e-9).value;
    double growth = 0.0;
    double lo = 16.0;
    for (int k = 0; k < 6; ++k) {
        double hi = lo * 16.0;
        growth = integrate_1d(weight, lo, hi, 1e-9, 1e-9).value;
        lo = hi;
    }
    bool outward_infinite = growth > 1e-3 * prev || growth > 1.0;
    if (metric.domain == ConformalMetric::Domain::plane) return outward_infinite;
    // Punctured plane: the origin must also lie at infinite distance.
    double inner_prev = integrate_1d(weight, 1.0 / 16.0, 1.0, 1e-9, 1e-9).value;
    double inner_growth = 0.0;
    double hi = 1.0 / 16.0;
    for (int k = 0; k < 6; ++k) {
        double lo2 = hi / 16.0;
        inner_growth = integrate_1d(weight, lo2, hi, 1e-9, 1e-9).value;
        hi = lo2;
    }
    bool inward_infinite = inner_growth > 1e-3 * inner_prev || inner_growth > 1.0;
    return outward_infinite && inward_infinite;
}

}  // namespace liouville
