#include "liouville/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/quad1d.hpp"
#include "liouville/quadrature.hpp"

namespace liouville {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ray_weight(const ConformalMetric& metric, double s) {
    return std::exp(metric.f({s, 0.0}));
}

double polygon_area(const std::vector<double>& xs, const std::vector<double>& ys) {
    double a = 0.0;
    size_t n = xs.size();
    for (size_t i = 0; i < n; ++i) {
        size_t j = (i + 1) % n;
        a += xs[i] * ys[j] - xs[j] * ys[i];
    }
    return 0.5 * std::fabs(a);
}

}  // namespace

// Fraction of the unit cell where the bilinear interpolant exceeds t, from the
// four corner values (counter-clockwise order); consistent with the
// marching-squares contour, saddles resolved by the cell-center average.
double cell_fraction_above(double v00, double v10, double v11, double v01, double t) {
    bool in[4] = {v00 > t, v10 > t, v11 > t, v01 > t};
    int count = in[0] + in[1] + in[2] + in[3];
    if (count == 0) return 0.0;
    if (count == 4) return 1.0;

    const double vx[4] = {v00, v10, v11, v01};
    const double px[4] = {0, 1, 1, 0};
    const double py[4] = {0, 0, 1, 1};

    bool saddle = count == 2 && in[0] == in[2];
    if (saddle && (v00 + v10 + v11 + v01) <= 4.0 * t) {
        // disconnected diagonal pair: two corner triangles
        double area = 0.0;
        for (int k = 0; k < 4; ++k) {
            if (!in[k]) continue;
            int prev = (k + 3) % 4, next = (k + 1) % 4;
            double sp = (vx[k] - t) / (vx[k] - vx[prev]);
            double sn = (vx[k] - t) / (vx[k] - vx[next]);
            std::vector<double> xs = {px[k], px[k] + sn * (px[next] - px[k]),
                                      px[k] + sp * (px[prev] - px[k])};
            std::vector<double> ys = {py[k], py[k] + sn * (py[next] - py[k]),
                                      py[k] + sp * (py[prev] - py[k])};
            area += polygon_area(xs, ys);
        }
        return area;
    }

    std::vector<double> xs, ys;
    for (int k = 0; k < 4; ++k) {
        int next = (k + 1) % 4;
        if (in[k]) {
            xs.push_back(px[k]);
            ys.push_back(py[k]);
        }
        if (in[k] != in[next]) {
            double s = (vx[k] - t) / (vx[k] - vx[next]);
            xs.push_back(px[k] + s * (px[next] - px[k]));
            ys.push_back(py[k] + s * (py[next] - py[k]));
        }
    }
    return polygon_area(xs, ys);
}

double radial_distance(const ConformalMetric& metric, double R, double tol) {
    if (!metric.radial) throw UsageError("radial distance needs a radially symmetric metric");
    if (metric.domain != ConformalMetric::Domain::plane)
        throw UsageError("radial distance is measured from the origin of a plane metric");
    if (R < 0.0) throw ParameterError("radius must be nonnegative");
    if (R == 0.0) return 0.0;
    QuadResult q = integrate_1d([&](double s) { return ray_weight(metric, s); }, 0.0, R,
                                tol, tol);
    return q.value;
}

struct DistanceField::Impl {
    Method method = Method::radial;
    ConformalMetric metric;
    Vec2 base_point{0.0, 0.0};
    // eikonal data
    GridSpec spec;
    std::vector<double> values;
};

DistanceField DistanceField::radial_oracle(const ConformalMetric& metric) {
    if (!metric.radial) throw UsageError("radial oracle needs a radially symmetric metric");
    auto impl = std::make_shared<Impl>();
    impl->method = Method::radial;
    impl->metric = metric;
    DistanceField d;
    d.impl_ = std::move(impl);
    return d;
}

double DistanceField::operator()(Vec2 p) const {
    const Impl& im = *impl_;
    if (im.method == Method::radial)
        return radial_distance(im.metric, (p - im.base_point).norm());
    const GridSpec& g = im.spec;
    Vec2 q;
    if (g.kind == GridSpec::Kind::cartesian) {
        q = p;
    } else {
        double r = p.norm();
        double th = std::atan2(p.y, p.x);
        if (th < 0) th += 2.0 * M_PI;
        q = {g.log_radial ? std::log(r) : r, th};
    }
    double fx = (q.x - g.qx_min()) / g.step_x();
    double fy = (q.y - g.qy_min()) / g.step_y();
    int n = g.resolution;
    if (fx < 0 || fx > n - 1) throw DomainError("point outside distance grid");
    int i = std::min(static_cast<int>(fx), n - 2);
    double ax = fx - i;
    int j, j1;
    double ay;
    if (g.periodic_y()) {
        j = static_cast<int>(std::floor(fy)) % n;
        if (j < 0) j += n;
        ay = fy - std::floor(fy);
        j1 = (j + 1) % n;
    } else {
        if (fy < 0 || fy > n - 1) throw DomainError("point outside distance grid");
        j = std::min(static_cast<int>(fy), n - 2);
        ay = fy - j;
        j1 = j + 1;
    }
    double v00 = im.values[g.index(i, j)], v10 = im.values[g.index(i + 1, j)];
    double v01 = im.values[g.index(i, j1)], v11 = im.values[g.index(i + 1, j1)];
    return (1 - ax) * (1 - ay) * v00 + ax * (1 - ay) * v10 + (1 - ax) * ay * v01 +
           ax * ay * v11;
}

double DistanceField::node(int i, int j) const {
    if (impl_->method != Method::eikonal) throw UsageError("radial oracle has no grid nodes");
    return impl_->values[impl_->spec.index(i, j)];
}

const GridSpec& DistanceField::grid() const {
    if (impl_->method != Method::eikonal) throw UsageError("radial oracle has no grid");
    return impl_->spec;
}

DistanceField::Method DistanceField::method() const { return impl_->method; }
Vec2 DistanceField::base() const { return impl_->base_point; }
const ConformalMetric& DistanceField::metric() const { return impl_->metric; }

DistanceField eikonal_distance(const ConformalMetric& metric, const GridSpec& grid,
                               Vec2 base) {
    grid.validate();
    if (!grid.conformal_chart())
        throw UsageError("eikonal solve needs a cartesian or log-polar grid");
    if (metric.domain == ConformalMetric::Domain::punctured_plane) {
        if (base.norm() == 0.0)
            throw UsageError("base at the puncture lies at infinite distance");
        if (grid.kind != GridSpec::Kind::polar)
            throw UsageError("punctured-plane metrics need a polar (annulus) grid");
    }

    const int n = grid.resolution;
    const double hx = grid.step_x(), hy = grid.step_y();
    const bool wrap = grid.periodic_y();

    Vec2 qb;
    if (grid.kind == GridSpec::Kind::cartesian) {
        qb = base;
    } else {
        double r = base.norm();
        double th = std::atan2(base.y, base.x);
        if (th < 0) th += 2.0 * M_PI;
        qb = {grid.log_radial ? std::log(r) : r, th};
    }
    if (qb.x < grid.qx_min() || qb.x > grid.qx_max() ||
        (!wrap && (qb.y < grid.qy_min() || qb.y > grid.qy_max())))
        throw UsageError("base point outside the grid");

    auto chart_factor = [&](Vec2 q) {
        return std::exp(metric.f(grid.chart_to_plane(q))) * grid.plane_jacobian(q);
    };

    std::vector<double> speed(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            speed[grid.index(i, j)] = chart_factor({grid.node_qx(i), grid.node_qy(j)});

    std::vector<double> dist(static_cast<size_t>(n) * n, kInf);
    std::vector<unsigned char> state(static_cast<size_t>(n) * n, 0); // 0 far 1 trial 2 done

    using HeapItem = std::pair<double, int>;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;

    // Seed near the base with straight chart segments (Simpson weights); the
    // geodesic-vs-segment gap is O(d^3), negligible at this radius.
    auto chart_segment_length = [&](Vec2 qa, Vec2 qz) {
        Vec2 mid = (qa + qz) * 0.5;
        double len = (qz - qa).norm();
        return len * (chart_factor(qa) + 4.0 * chart_factor(mid) + chart_factor(qz)) / 6.0;
    };
    // A seed disk of a few percent of the chart span keeps the point-source
    // error of the first-order march well under the 2% oracle budget.
    const double chart_span = std::min(grid.qx_max() - grid.qx_min(),
                                       grid.qy_max() - grid.qy_min());
    const double init_radius = std::max(6.0 * std::max(hx, hy), 0.05 * chart_span);
    bool radial_origin_base = metric.radial && grid.kind == GridSpec::Kind::cartesian &&
                              base.norm() == 0.0;
    int seeded = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            Vec2 q{grid.node_qx(i), grid.node_qy(j)};
            Vec2 dq = q - qb;
            if (wrap) dq.y = std::remainder(dq.y, 2.0 * M_PI);
            if (dq.norm() > init_radius) continue;
            int idx = grid.index(i, j);
            dist[idx] = radial_origin_base
                            ? radial_distance(metric, grid.chart_to_plane(q).norm(), 1e-10)
                            : chart_segment_length(qb, qb + dq);
            state[idx] = 2;
            ++seeded;
        }
    if (seeded == 0) throw UsageError("grid too coarse around the base point");

    auto try_update = [&](int i, int j) {
        int idx = grid.index(i, j);
        if (state[idx] == 2) return;
        double ax = kInf, ay = kInf;
        if (i > 0 && state[grid.index(i - 1, j)] == 2) ax = dist[grid.index(i - 1, j)];
        if (i < n - 1 && state[grid.index(i + 1, j)] == 2)
            ax = std::min(ax, dist[grid.index(i + 1, j)]);
        int jm = wrap ? (j + n - 1) % n : j - 1;
        int jp = wrap ? (j + 1) % n : j + 1;
        if (jm >= 0 && state[grid.index(i, jm)] == 2) ay = dist[grid.index(i, jm)];
        if (jp <= n - 1 && state[grid.index(i, jp)] == 2)
            ay = std::min(ay, dist[grid.index(i, jp)]);
        double s = speed[idx];
        double cand = kInf;
        if (ax < kInf && ay < kInf) {
            double ix2 = 1.0 / (hx * hx), iy2 = 1.0 / (hy * hy);
            double A = ix2 + iy2;
            double B = -2.0 * (ax * ix2 + ay * iy2);
            double C = ax * ax * ix2 + ay * ay * iy2 - s * s;
            double disc = B * B - 4.0 * A * C;
            if (disc >= 0.0) {
                double T = (-B + std::sqrt(disc)) / (2.0 * A);
                if (T >= std::max(ax, ay)) cand = T;
            }
        }
        if (cand == kInf) {
            if (ax < kInf) cand = ax + s * hx;
            if (ay < kInf) cand = std::min(cand, ay + s * hy);
        }
        if (cand < dist[idx]) {
            dist[idx] = cand;
            state[idx] = 1;
            heap.emplace(cand, idx);
        }
    };

    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (state[grid.index(i, j)] == 2) {
                if (i > 0) try_update(i - 1, j);
                if (i < n - 1) try_update(i + 1, j);
                if (wrap || j > 0) try_update(i, wrap ? (j + n - 1) % n : j - 1);
                if (wrap || j < n - 1) try_update(i, wrap ? (j + 1) % n : j + 1);
            }

    while (!heap.empty()) {
        auto [val, idx] = heap.top();
        heap.pop();
        if (state[idx] == 2) continue; // stale heap entry
        (void)val;
        state[idx] = 2;
        int i = idx % n, j = idx / n;
        if (i > 0) try_update(i - 1, j);
        if (i < n - 1) try_update(i + 1, j);
        if (wrap || j > 0) try_update(i, wrap ? (j + n - 1) % n : j - 1);
        if (wrap || j < n - 1) try_update(i, wrap ? (j + 1) % n : j + 1);
    }

    auto impl = std::make_shared<DistanceField::Impl>();
    impl->method = DistanceField::Method::eikonal;
    impl->metric = metric;
    impl->base_point = base;
    impl->spec = grid;
    impl->values = std::move(dist);
    DistanceField d;
    d.impl_ = std::move(impl);
    return d;
}

namespace {

// invert r(R) = t by doubling + bisection (r is monotone along rays)
double radial_ball_radius(const ConformalMetric& metric, double t, double tol) {
    double hi = 1.0;
    while (radial_distance(metric, hi, tol) < t) {
        hi *= 2.0;
        if (hi > 1e15) throw CompletenessError("ball radius exceeds the metric's reach");
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (radial_distance(metric, mid, tol) < t)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) < 1e-12 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

double radial_area(const ConformalMetric& metric, double R, double tol) {
    const ScalarField f = metric.f;
    QuadResult q = integrate_1d(
        [f](double s) { return std::exp(2.0 * f({s, 0.0})) * s; }, 0.0, R, tol, tol);
    return 2.0 * M_PI * q.value;
}

struct LinFit {
    double slope, intercept;
};

LinFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {slope, (sy - slope * sx) / n};
}

// Intercept of Area/(pi t^2) against 1/t over the top decade of t: the ratio
// approaches beta with O(1/t) corrections for polynomial-decay metrics.
double fit_avr_intercept(const std::vector<double>& ts, const std::vector<double>& ratios) {
    double tmax = *std::max_element(ts.begin(), ts.end());
    std::vector<double> xs, ys;
    for (size_t k = 0; k < ts.size(); ++k) {
        if (ts[k] < tmax / 10.0 - 1e-12) continue;
        xs.push_back(1.0 / ts[k]);
        ys.push_back(ratios[k]);
    }
    return least_squares(xs, ys).intercept;
}

}  // namespace

double ball_area(const DistanceField& dist, double t) {
    if (!(t > 0.0)) throw ParameterError("ball area needs t > 0");
    if (dist.method() == DistanceField::Method::radial) {
        const ConformalMetric& m = dist.metric();
        double R = radial_ball_radius(m, t, 1e-10);
        return radial_area(m, R, 1e-10);
    }
    const GridSpec& g = dist.grid();
    const ConformalMetric& m = dist.metric();
    int n = g.resolution;
    double hx = g.step_x(), hy = g.step_y();
    double area = 0.0;
    int jmax = g.periodic_y() ? n : n - 1;
    for (int j = 0; j < jmax; ++j) {
        int j1 = g.periodic_y() ? (j + 1) % n : j + 1;
        for (int i = 0; i < n - 1; ++i) {
            // fraction of the cell with r < t  (== -r > -t)
            double frac = cell_fraction_above(-dist.node(i, j), -dist.node(i + 1, j),
                                              -dist.node(i + 1, j1), -dist.node(i, j1), -t);
            if (frac == 0.0) continue;
            Vec2 qc{g.node_qx(i) + 0.5 * hx, g.node_qy(j) + 0.5 * hy};
            double jac = g.plane_jacobian(qc);
            double w = std::exp(2.0 * m.f(g.chart_to_plane(qc))) * jac * jac;
            area += frac * w * hx * hy;
        }
    }
    return area;
}

AvrReport avr(const ConformalMetric& metric, double tmax, double tol, int grid_n) {
    if (!is_complete(metric))
        throw CompletenessError("metric has finite diameter; no asymptotic volume ratio");
    AvrReport rep;
    rep.beta_gb = 1.0 - total_gauss_curvature(metric, tol) / (2.0 * M_PI);
    rep.gb_applicable = metric.domain == ConformalMetric::Domain::plane;

    std::vector<double> ts, ratios;
    if (metric.radial && metric.domain == ConformalMetric::Domain::plane) {
        if (tmax <= 0.0) tmax = 1000.0;
        double r_hi = radial_ball_radius(metric, tmax, 1e-9);
        double r_lo = radial_ball_radius(metric, tmax / 10.0, 1e-9);
        const int rungs = 12;
        for (int k = 0; k < rungs; ++k) {
            double R = r_lo * std::exp(std::log(r_hi / r_lo) * k / (rungs - 1.0));
            double t = radial_distance(metric, R, 1e-10);
            ts.push_back(t);
            ratios.push_back(radial_area(metric, R, 1e-10) / (M_PI * t * t));
        }
    } else {
        // punctured-plane (cylinder-like): fast-march the log-polar chart
        if (tmax <= 0.0) tmax = 100.0;
        double span = tmax + 3.0;
        GridSpec grid = GridSpec::polar(std::exp(-span), std::exp(span), grid_n, true);
        DistanceField d = eikonal_distance(metric, grid, {1.0, 0.0});
        for (int k = 0; k < 10; ++k) {
            double t = tmax / 10.0 + (tmax - tmax / 10.0) * k / 9.0;
            ts.push_back(t);
            ratios.push_back(ball_area(d, t) / (M_PI * t * t));
        }
    }
    rep.beta_area = fit_avr_intercept(ts, ratios);
    rep.tmax = tmax;
    rep.gap = std::fabs(rep.beta_area - rep.beta_gb);
    return rep;
}

double distance_slope(const ConformalMetric& metric, std::span<const double> radii) {
    if (radii.size() < 2) throw ParameterError("distance slope needs at least two radii");
    std::vector<double> xs, ys;
    for (double R : radii) {
        xs.push_back(std::log(R));
        ys.push_back(std::log(radial_distance(metric, R, 1e-10)));
    }
    return least_squares(xs, ys).slope;
}

double distance_slope(const ConformalMetric& metric) {
    const double radii[] = {1e3, 1e4, 1e5, 1e6};
    return distance_slope(metric, radii);
}

}  // namespace liouville
