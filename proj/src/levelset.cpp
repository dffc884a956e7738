#include "liouville/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "liouville/errors.hpp"
#include "liouville/fd.hpp"
#include "liouville/geodesics.hpp"

namespace liouville {

namespace {

struct SampledGrid {
    GridSpec spec;
    std::vector<double> values;
    double vmin = 0.0, vmax = 0.0;

    double at(int i, int j) const { return values[spec.index(i, j)]; }
};

double chart_boundary_truncation(const SampledGrid& s, double t,
                                 const ConformalMetric* metric);

SampledGrid sample_field(const ScalarField& u, const GridSpec& grid) {
    grid.validate();
    SampledGrid s;
    s.spec = grid;
    if (u.is_sampled() && u.grid().kind == grid.kind &&
        u.grid().resolution == grid.resolution && u.grid().extent == grid.extent &&
        u.grid().inner_radius == grid.inner_radius) {
        s.values = u.node_values();
    } else {
        int n = grid.resolution;
        s.values.resize(static_cast<size_t>(n) * n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                s.values[grid.index(i, j)] = u(grid.node_point(i, j));
    }
    auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
    s.vmin = *mn;
    s.vmax = *mx;
    return s;
}

// Oriented marching squares: segments run edge-to-edge with {u > t} on the
// left; crossings are keyed by a global edge id so neighboring cells produce
// bit-identical stitch points.
struct Segment {
    std::int64_t from_edge, to_edge;
    Vec2 a, b; // chart coordinates
};

ContourSet extract_from_samples(const SampledGrid& s, double t) {
    const GridSpec& g = s.spec;
    if (!g.conformal_chart())
        throw UsageError("level-set extraction needs a cartesian or log-polar grid");
    if (!(t > s.vmin && t < s.vmax))
        throw LevelSetRangeError("threshold outside the sampled range of u");

    const int n = g.resolution;
    const double hx = g.step_x(), hy = g.step_y();
    const bool wrap = g.periodic_y();
    const int jcells = wrap ? n : n - 1;

    auto h_edge = [n](int i, int j) { return 2 * (static_cast<std::int64_t>(j) * n + i); };
    auto v_edge = [n](int i, int j) {
        return 2 * (static_cast<std::int64_t>(j) * n + i) + 1;
    };

    std::vector<Segment> segments;
    for (int j = 0; j < jcells; ++j) {
        int j1 = wrap ? (j + 1) % n : j + 1;
        double y0 = g.node_qy(j), y1 = y0 + hy;
        for (int i = 0; i < n - 1; ++i) {
            double v00 = s.at(i, j), v10 = s.at(i + 1, j);
            double v11 = s.at(i + 1, j1), v01 = s.at(i, j1);
            int code = (v00 > t) | ((v10 > t) << 1) | ((v11 > t) << 2) | ((v01 > t) << 3);
            if (code == 0 || code == 15) continue;

            double x0 = g.node_qx(i), x1 = x0 + hx;
            auto cross = [t](double va, double vb) { return (va - t) / (va - vb); };
            Vec2 pS{x0 + cross(v00, v10) * hx, y0};
            Vec2 pE{x1, y0 + cross(v10, v11) * hy};
            Vec2 pN{x0 + cross(v01, v11) * hx, y1};
            Vec2 pW{x0, y0 + cross(v00, v01) * hy};
            std::int64_t eS = h_edge(i, j), eE = v_edge(i + 1, j), eN = h_edge(i, j1),
                         eW = v_edge(i, j);

            auto emit = [&](std::int64_t ea, Vec2 pa, std::int64_t eb, Vec2 pb) {
                segments.push_back({ea, eb, pa, pb});
            };
            switch (code) {
                case 1: emit(eS, pS, eW, pW); break;  // v00
                case 2: emit(eE, pE, eS, pS); break;  // v10
                case 4: emit(eN, pN, eE, pE); break;  // v11
                case 8: emit(eW, pW, eN, pN); break;  // v01
                case 3: emit(eE, pE, eW, pW); break;  // bottom row inside
                case 6: emit(eN, pN, eS, pS); break;  // right column inside
                case 12: emit(eW, pW, eE, pE); break; // top row inside
                case 9: emit(eS, pS, eN, pN); break;  // left column inside
                case 14: emit(eW, pW, eS, pS); break; // all but v00
                case 13: emit(eS, pS, eE, pE); break; // all but v10
                case 11: emit(eE, pE, eN, pN); break; // all but v11
                case 7: emit(eN, pN, eW, pW); break;  // all but v01
                case 5:                                // v00+v11 saddle
                    if (v00 + v10 + v11 + v01 > 4 * t) {
                        emit(eS, pS, eE, pE);
                        emit(eN, pN, eW, pW);
                    } else {
                        emit(eS, pS, eW, pW);
                        emit(eN, pN, eE, pE);
                    }
                    break;
                case 10:                               // v10+v01 saddle
                    if (v00 + v10 + v11 + v01 > 4 * t) {
                        emit(eE, pE, eN, pN);
                        emit(eW, pW, eS, pS);
                    } else {
                        emit(eE, pE, eS, pS);
                        emit(eW, pW, eN, pN);
                    }
                    break;
                default: break;
            }
        }
    }

    std::unordered_map<std::int64_t, size_t> by_from, by_to;
    by_from.reserve(segments.size() * 2);
    by_to.reserve(segments.size() * 2);
    for (size_t k = 0; k < segments.size(); ++k) {
        by_from[segments[k].from_edge] = k;
        by_to[segments[k].to_edge] = k;
    }

    ContourSet cs;
    cs.chart = g;
    cs.threshold = t;
    std::vector<bool> used(segments.size(), false);
    for (size_t start = 0; start < segments.size(); ++start) {
        if (used[start]) continue;
        // rewind to the chain head (stops after one lap on closed loops)
        size_t head = start;
        for (size_t guard = 0; guard < segments.size(); ++guard) {
            auto it = by_to.find(segments[head].from_edge);
            if (it == by_to.end() || it->second == start) break;
            head = it->second;
        }
        Contour c;
        c.points.push_back(segments[head].a);
        size_t cur = head;
        bool closed = false;
        for (size_t guard = 0; guard <= segments.size(); ++guard) {
            used[cur] = true;
            c.points.push_back(segments[cur].b);
            auto it = by_from.find(segments[cur].to_edge);
            if (it == by_from.end()) break;
            if (it->second == head) {
                closed = true;
                break;
            }
            if (used[it->second]) break;
            cur = it->second;
        }
        c.closed = closed;
        if (closed) c.points.back() = c.points.front();
        cs.contours.push_back(std::move(c));
    }
    cs.truncation_length = chart_boundary_truncation(s, t, nullptr);
    return cs;
}

// Length of the box-boundary pieces lying inside {u > t}: metric length when a
// metric is given, plane-Euclidean length otherwise.
double chart_boundary_truncation(const SampledGrid& s, double t,
                                 const ConformalMetric* metric) {
    const GridSpec& g = s.spec;
    const int n = g.resolution;
    double total = 0.0;
    auto piece = [&](Vec2 qa, Vec2 qb, double va, double vb) {
        double inside_frac;
        if (va > t && vb > t)
            inside_frac = 1.0;
        else if (va <= t && vb <= t)
            inside_frac = 0.0;
        else
            inside_frac = (std::max(va, vb) - t) / std::fabs(va - vb);
        if (inside_frac == 0.0) return;
        Vec2 qm = (qa + qb) * 0.5;
        double w = (metric ? metric->length_weight(g.chart_to_plane(qm)) : 1.0) *
                   g.plane_jacobian(qm);
        total += inside_frac * w * (qb - qa).norm();
    };
    for (int i = 0; i < n - 1; ++i) {
        piece({g.node_qx(i), g.node_qy(0)}, {g.node_qx(i + 1), g.node_qy(0)}, s.at(i, 0),
              s.at(i + 1, 0));
        if (!g.periodic_y())
            piece({g.node_qx(i), g.node_qy(n - 1)}, {g.node_qx(i + 1), g.node_qy(n - 1)},
                  s.at(i, n - 1), s.at(i + 1, n - 1));
    }
    int jmax = g.periodic_y() ? n : n - 1;
    double hy = g.step_y();
    for (int j = 0; j < jmax; ++j) {
        int j1 = g.periodic_y() ? (j + 1) % n : j + 1;
        piece({g.node_qx(0), g.node_qy(j)}, {g.node_qx(0), g.node_qy(j) + hy}, s.at(0, j),
              s.at(0, j1));
        piece({g.node_qx(n - 1), g.node_qy(j)}, {g.node_qx(n - 1), g.node_qy(j) + hy},
              s.at(n - 1, j), s.at(n - 1, j1));
    }
    return total;
}

double cell_sum(const SampledGrid& s, double t, const std::function<double(Vec2)>& weight) {
    const GridSpec& g = s.spec;
    const int n = g.resolution;
    const double hx = g.step_x(), hy = g.step_y();
    const int jcells = g.periodic_y() ? n : n - 1;
    double total = 0.0;
    for (int j = 0; j < jcells; ++j) {
        int j1 = g.periodic_y() ? (j + 1) % n : j + 1;
        for (int i = 0; i < n - 1; ++i) {
            double frac = cell_fraction_above(s.at(i, j), s.at(i + 1, j), s.at(i + 1, j1),
                                              s.at(i, j1), t);
            if (frac == 0.0) continue;
            Vec2 qc{g.node_qx(i) + 0.5 * hx, g.node_qy(j) + 0.5 * hy};
            total += frac * weight(qc) * hx * hy;
        }
    }
    return total;
}

// per-segment reduction; re-wraps the periodic coordinate so midpoints across
// the theta seam land on the right side
template <class F>
double segment_sum(const ContourSet& cs, F&& fn) {
    const GridSpec& g = cs.chart;
    const bool wrap = g.periodic_y();
    double total = 0.0;
    for (const Contour& c : cs.contours) {
        for (size_t k = 0; k + 1 < c.points.size(); ++k) {
            Vec2 qa = c.points[k], qb = c.points[k + 1];
            if (wrap) qb.y = qa.y + std::remainder(qb.y - qa.y, 2.0 * M_PI);
            Vec2 a = g.chart_to_plane(qa), b = g.chart_to_plane(qb);
            Vec2 m = g.chart_to_plane((qa + qb) * 0.5);
            total += fn(a, b, m);
        }
    }
    return total;
}

}  // namespace

ContourSet extract_levelset(const ScalarField& u, const GridSpec& grid, double t) {
    SampledGrid s = sample_field(u, grid);
    return extract_from_samples(s, t);
}

double metric_length(const ContourSet& cs, const ConformalMetric& metric) {
    return segment_sum(cs, [&](Vec2 a, Vec2 b, Vec2 m) {
        return metric.length_weight(m) * (b - a).norm();
    });
}

double euclid_length(const ContourSet& cs) {
    return segment_sum(cs, [](Vec2 a, Vec2 b, Vec2) { return (b - a).norm(); });
}

double metric_area(const ScalarField& u, const GridSpec& grid, double t,
                   const ConformalMetric& metric) {
    SampledGrid s = sample_field(u, grid);
    const GridSpec& g = s.spec;
    ConformalMetric m = metric;
    return cell_sum(s, t, [&g, m](Vec2 qc) {
        double jac = g.plane_jacobian(qc);
        return m.area_weight(g.chart_to_plane(qc)) * jac * jac;
    });
}

double region_mass(const ScalarField& u, const GridSpec& grid, double t,
                   const std::function<double(Vec2)>& log_density) {
    SampledGrid s = sample_field(u, grid);
    const GridSpec& g = s.spec;
    return cell_sum(s, t, [&g, &log_density](Vec2 qc) {
        double jac = g.plane_jacobian(qc);
        return std::exp(log_density(g.chart_to_plane(qc))) * jac * jac;
    });
}

double boundary_flux(const ContourSet& cs, const ScalarField& u) {
    return segment_sum(cs, [&](Vec2 a, Vec2 b, Vec2 m) {
        return gradient_fd(u, m).norm() * (b - a).norm();
    });
}

double boundary_inv_flux(const ContourSet& cs, const ScalarField& u,
                         const ConformalMetric& metric) {
    return segment_sum(cs, [&](Vec2 a, Vec2 b, Vec2 m) {
        return metric.area_weight(m) / gradient_fd(u, m).norm() * (b - a).norm();
    });
}

std::vector<double> default_thresholds(const LiouvilleSolution& sol, int count) {
    if (count < 2) throw ParameterError("need at least two thresholds");
    std::vector<double> ts(count);
    double lo = sol.u_max - 8.0, hi = sol.u_max - 0.2;
    for (int k = 0; k < count; ++k) ts[k] = lo + (hi - lo) * k / (count - 1.0);
    return ts;
}

namespace {

double circle_max(const ScalarField& u, double r, int angles = 32) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < angles; ++a)
        best = std::max(best, u(polar_point(r, 2.0 * M_PI * (a + 0.5) / angles)));
    return best;
}

}  // namespace

GridSpec levelset_chart(const LiouvilleSolution& sol, double t_low, int grid_n) {
    const ScalarField& u = sol.u;
    bool punctured = sol.metric.domain == ConformalMetric::Domain::punctured_plane;
    if (!punctured) {
        double r = std::max(1.0, 2.0 * sol.u_argmax.norm());
        while (circle_max(u, r) > t_low) {
            r *= 2.0;
            if (r > 1e12)
                throw LevelSetRangeError("level set does not close at reachable radii");
        }
        double lo = r / 2.0, hi = r;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (circle_max(u, mid) > t_low ? lo : hi) = mid;
        }
        return GridSpec::cartesian(1.3 * hi, grid_n);
    }
    // punctured: bracket the level set in ln r on both sides of the peak
    double l_star = std::log(std::max(sol.u_argmax.norm(), 1e-12));
    auto lmax = [&](double l) { return circle_max(u, std::exp(l)); };
    double step = 1.0, out = l_star + step;
    while (lmax(out) > t_low) {
        step *= 2.0;
        out = l_star + step;
        if (out > 600.0) throw LevelSetRangeError("level set does not close outward");
    }
    step = 1.0;
    double in = l_star - step;
    while (lmax(in) > t_low) {
        step *= 2.0;
        in = l_star - step;
        if (in < -600.0) throw LevelSetRangeError("level set does not close inward");
    }
    double margin = 0.15 * (out - in) + 0.2;
    return GridSpec::polar(std::exp(in - margin), std::exp(out + margin), grid_n, true);
}

LevelSetProfile levelset_profile(const LiouvilleSolution& sol, double beta,
                                 std::span<const double> ts, int grid_n) {
    LevelSetProfile prof;
    prof.solution = sol.name;
    prof.beta = beta;
    prof.isoperimetric_vacuous = !(beta > 0.0);
    const double delta = 0.05; // (F^2)' stencil, decoupled from the ladder spacing

    for (double t : ts) {
        GridSpec chart = levelset_chart(sol, t - delta, grid_n);
        SampledGrid s = sample_field(sol.u, chart);
        const GridSpec& g = s.spec;

        auto mass_at = [&](double tt) {
            return cell_sum(s, tt, [&](Vec2 qc) {
                double jac = g.plane_jacobian(qc);
                return std::exp(sol.log_density(g.chart_to_plane(qc))) * jac * jac;
            });
        };

        LevelSetRow row;
        row.t = t;
        ContourSet cs = extract_from_samples(s, t);
        row.area_g = cell_sum(s, t, [&](Vec2 qc) {
            double jac = g.plane_jacobian(qc);
            return sol.metric.area_weight(g.chart_to_plane(qc)) * jac * jac;
        });
        row.length_g = metric_length(cs, sol.metric);
        row.mass = mass_at(t);
        row.flux = boundary_flux(cs, sol.u);
        row.inv_flux = boundary_inv_flux(cs, sol.u, sol.metric);
        row.truncation_length = chart_boundary_truncation(s, t, &sol.metric);
        row.advisory = row.truncation_length > 0.01 * row.length_g;

        double f_lo = mass_at(t - delta), f_hi = mass_at(t + delta);
        row.ode_lhs = (f_hi * f_hi - f_lo * f_lo) / (2.0 * delta);
        row.ode_rhs = -8.0 * M_PI * beta * std::exp(2.0 * t) * row.area_g;
        row.ode_margin_rel =
            (row.ode_rhs - row.ode_lhs) / std::max(std::fabs(row.ode_rhs), 1e-300);
        row.iso_ratio = prof.isoperimetric_vacuous
                            ? std::numeric_limits<double>::quiet_NaN()
                            : row.length_g * row.length_g /
                                  (4.0 * M_PI * beta * row.area_g);
        prof.rows.push_back(row);
    }
    return prof;
}

LevelSetProfile isoperimetric_check(const LiouvilleSolution& sol, double beta,
                                    std::span<const double> ts, int grid_n) {
    return levelset_profile(sol, beta, ts, grid_n);
}

std::vector<OdeMargin> ode_inequality_check(const LevelSetProfile& profile, double beta) {
    std::vector<OdeMargin> out;
    for (const LevelSetRow& row : profile.rows) {
        OdeMargin m;
        m.t = row.t;
        m.lhs = row.ode_lhs;
        m.rhs = -8.0 * M_PI * beta * std::exp(2.0 * row.t) * row.area_g;
        m.margin_rel = (m.rhs - m.lhs) / std::max(std::fabs(m.rhs), 1e-300);
        out.push_back(m);
    }
    return out;
}

}  // namespace liouville
