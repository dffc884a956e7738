#include "liouville/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

// QUADPACK QK15 nodes/weights on [-1,1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
};

struct PanelWorse {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.error != q.error) return p.error < q.error;
        return p.a < q.a; // deterministic tie-break
    }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b);
    double hl = 0.5 * (b - a);
    double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = hl * kXgk[i];
        double s = f(c - dx) + f(c + dx);
        k15 += kWgk[i] * s;
        if (i % 2 == 1) g7 += kWg[i / 2] * s;
    }
    k15 *= hl;
    g7 *= hl;
    return {a, b, k15, std::fabs(k15 - g7)};
}

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_panels) {
    if (!(abs_tol > 0.0) && !(rel_tol > 0.0))
        throw ParameterError("quadrature needs a positive tolerance");
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    Panel first = gk15(f, a, b);
    double total = first.value, err = first.error;
    heap.push(first);
    int panels = 1;
    while (panels < max_panels) {
        double goal = std::max(abs_tol, rel_tol * std::fabs(total));
        if (err <= goal) break;
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) { // interval at roundoff limit
            heap.push(worst);
            break;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    out.value = total;
    out.abs_error = err;
    out.panels = panels;
    out.converged = err <= std::max(abs_tol, rel_tol * std::fabs(total));
    if (!std::isfinite(total)) throw EvaluationError("non-finite quadrature value");
    return out;
}

QuadResult integrate_periodic(const std::function<double(double)>& f, double abs_tol,
                              int max_points) {
    const double period = 2.0 * M_PI;
    int n = 16;
    double h = period / n;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += f(k * h);
    double prev = sum * h;
    QuadResult out;
    while (n < max_points) {
        // refine: add midpoints
        double add = 0.0;
        for (int k = 0; k < n; ++k) add += f((k + 0.5) * h);
        n *= 2;
        h = period / n;
        sum += add;
        double cur = sum * h;
        double diff = std::fabs(cur - prev);
        prev = cur;
        out.panels = n;
        if (diff <= abs_tol) {
            out.value = cur;
            out.abs_error = diff;
            out.converged = true;
            return out;
        }
        out.abs_error = diff;
    }
    out.value = prev;
    return out;
}

namespace {

double ring_integral(const std::function<double(Vec2)>& density, double rho, double tol,
                     int min_points) {
    QuadResult q = integrate_periodic(
        [&](double th) { return density(polar_point(rho, th)); },
        tol / std::max(rho, 1e-3), 16384);
    (void)min_points;
    return rho * q.value;
}

// Fitted decay exponent p of the angular max of the density at geometric radii
// beyond R0 (density ~ rho^-p).
double tail_decay_exponent(const std::function<double(Vec2)>& density, double r0) {
    const int kAngles = 16;
    const int kRungs = 5;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int k = 0; k < kRungs; ++k) {
        double rho = r0 * std::pow(4.0, k + 1);
        double mx = 0.0;
        for (int a = 0; a < kAngles; ++a)
            mx = std::max(mx, density(polar_point(rho, 2.0 * M_PI * a / kAngles)));
        if (mx <= 0.0) return 1e9; // identically zero tail: converges trivially
        double lx = std::log(rho), ly = std::log(mx);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    double denom = m * sxx - sx * sx;
    return -(m * sxy - sx * sy) / denom;
}

}  // namespace

PlanarIntegral integrate_plane(const std::function<double(Vec2)>& density, double tol,
                               const PlaneQuadOptions& opts) {
    if (!(tol > 0.0)) throw ParameterError("integrate_plane needs tol > 0");
    PlanarIntegral out;
    double r0 = opts.split_radius;

    auto radial_profile = [&](double rho) {
        return ring_integral(density, rho, 0.05 * tol, opts.min_angular_points);
    };

    QuadResult core =
        integrate_1d(radial_profile, opts.inner_radius, r0, 0.45 * tol, 0.0, 4000);

    out.growth_exponent = tail_decay_exponent(density, r0);
    if (out.growth_exponent <= 2.05) {
        out.value = std::numeric_limits<double>::quiet_NaN();
        out.converged = false;
        out.panels = core.panels;
        return out;
    }

    // s = 1/rho on (R0, inf)
    QuadResult tail = integrate_1d(
        [&](double s) { return radial_profile(1.0 / s) / (s * s); }, 0.0, 1.0 / r0,
        0.45 * tol, 0.0, 4000);

    out.value = core.value + tail.value;
    out.abs_error = core.abs_error + tail.abs_error;
    out.panels = core.panels + tail.panels;
    out.tail_fraction = out.value > 0 ? tail.value / out.value : 0.0;
    out.converged = core.converged && tail.converged;
    return out;
}

PlanarIntegral integrate_plane(const ScalarField& density, double tol,
                               const PlaneQuadOptions& opts) {
    ScalarField d = density;
    return integrate_plane([d](Vec2 p) { return d(p); }, tol, opts);
}

double angular_average(const std::function<double(Vec2)>& f, double radius, int n_angles) {
    double s = 0.0;
    for (int a = 0; a < n_angles; ++a)
        s += f(polar_point(radius, 2.0 * M_PI * (a + 0.5) / n_angles));
    return s / n_angles;
}

PlanarIntegral total_mass(const LiouvilleSolution& sol, double tol) {
    PlaneQuadOptions opts;
    if (sol.metric.domain == ConformalMetric::Domain::punctured_plane)
        opts.inner_radius = 0.0; // densities extend by 0 across the puncture
    return integrate_plane(sol.density(), tol, opts);
}

double alpha_of(const LiouvilleSolution& sol, double tol) {
    PlanarIntegral mass = total_mass(sol, tol);
    if (!mass.converged)
        throw DivergenceError("total curvature integral did not converge (exponent ~" +
                              std::to_string(mass.growth_exponent) + ")");
    return -mass.value / (2.0 * M_PI);
}

double total_gauss_curvature(const ConformalMetric& metric, double tol) {
    ConformalMetric m = metric;
    PlaneQuadOptions opts;
    if (metric.domain == ConformalMetric::Domain::punctured_plane)
        opts.inner_radius = 0.0;
    PlanarIntegral q = integrate_plane(
        [m](Vec2 p) {
            if (p.norm2() == 0.0 && m.domain == ConformalMetric::Domain::punctured_plane)
                return 0.0;
            return m.gauss_curvature(p) * m.area_weight(p);
        },
        tol, opts);
    if (!q.converged)
        throw DivergenceError("total curvature of the metric did not converge");
    return q.value;
}

}  // namespace liouville
