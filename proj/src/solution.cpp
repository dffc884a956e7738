#include "liouville/solution.hpp"

#include <cmath>
#include <charconv>
#include <limits>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/fd.hpp"

namespace liouville {

namespace {

// ln(e^a + e^b) without overflow.
double log_add_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

// ln|1 + zeta| for zeta given as log|zeta|, arg(zeta); stable for any modulus.
double log_abs_1p_polar(double log_mod, double arg) {
    if (log_mod > 0.5) {
        double inv = -log_mod;
        double a = std::exp(inv);
        return log_mod + 0.5 * std::log1p(2.0 * a * std::cos(-arg) + a * a);
    }
    double a = std::exp(log_mod);
    return 0.5 * std::log1p(2.0 * a * std::cos(arg) + a * a);
}

struct CylinderParams {
    double b;
    double mu;
};

// ln D with D = |1 + mu z^{b+1}|^2 + |z|^{2b+2}, in terms of l = ln|z|.
double cylinder_log_denominator(const CylinderParams& cp, double l, double theta) {
    double log_b_part = (2.0 * cp.b + 2.0) * l;
    double log_a2 = 0.0;
    if (cp.mu > 0.0) {
        double log_mod = std::log(cp.mu) + (cp.b + 1.0) * l;
        log_a2 = 2.0 * log_abs_1p_polar(log_mod, (cp.b + 1.0) * theta);
    }
    return log_add_exp(log_a2, log_b_part);
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                 double* max_residual = nullptr, double* stderr_out = nullptr) {
    size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double icept = (sy - slope * sx) / n;
    if (max_residual) {
        double mr = 0.0;
        for (size_t i = 0; i < n; ++i)
            mr = std::max(mr, std::fabs(ys[i] - slope * xs[i] - icept));
        *max_residual = mr;
    }
    if (stderr_out) {
        double ss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double r = ys[i] - slope * xs[i] - icept;
            ss += r * r;
        }
        *stderr_out = n > 2 ? std::sqrt(ss / (n - 2) / (sxx - sx * sx / n)) : 0.0;
    }
    return slope;
}

}  // namespace

std::function<double(Vec2)> LiouvilleSolution::density() const {
    auto ld = log_density;
    return [ld](Vec2 p) { return std::exp(ld(p)); };
}

LiouvilleSolution solution_spherical() {
    LiouvilleSolution s;
    s.name = "spherical";
    s.metric = metric_flat();
    s.u = ScalarField::analytic(
        [](Vec2 p) { return std::log(2.0) - log1p_sq(p.norm()); });
    s.log_density = [](Vec2 p) { return 2.0 * std::log(2.0) - 2.0 * log1p_sq(p.norm()); };
    s.u_max = std::log(2.0);
    s.u_argmax = {0.0, 0.0};
    return s;
}

LiouvilleSolution solution_gamma(double gamma) {
    ConformalMetric m = metric_gamma(gamma); // validates gamma
    LiouvilleSolution s;
    s.name = "gamma:" + std::to_string(gamma);
    s.metric = m;
    s.u = ScalarField::analytic(
        [gamma](Vec2 p) { return std::log(2.0) - gamma * log1p_sq(p.norm()); });
    // e^{2f+2u} = 4 gamma / (1+|x|^2)^2
    s.log_density = [gamma](Vec2 p) {
        return std::log(4.0 * gamma) - 2.0 * log1p_sq(p.norm());
    };
    s.u_max = std::log(2.0);
    s.u_argmax = {0.0, 0.0};
    return s;
}

LiouvilleSolution solution_cylinder(double b, double mu) {
    if (!(b > -1.0)) throw ParameterError("cylinder solution needs b > -1");
    if (mu < 0.0) throw ParameterError("cylinder solution needs mu >= 0");
    if (mu > 0.0 && (b < 0.0 || b != std::floor(b)))
        throw ParameterError("mu > 0 needs integer b >= 0 (z^{b+1} is multivalued otherwise)");
    CylinderParams cp{b, mu};
    LiouvilleSolution s;
    s.name = "cylinder:" + std::to_string(b) + ":" + std::to_string(mu);
    s.metric = metric_cylinder_pullback();
    s.u = ScalarField::analytic(
        [cp](Vec2 p) {
            double l = std::log(p.norm());
            double th = std::atan2(p.y, p.x);
            return std::log(2.0 * cp.b + 2.0) + (cp.b + 1.0) * l -
                   cylinder_log_denominator(cp, l, th);
        },
        {Vec2{0.0, 0.0}});
    // 2w = 2f + 2u with e^{2f} = 1/|z|^2
    s.log_density = [cp](Vec2 p) {
        double r = p.norm();
        if (r == 0.0)
            return cp.b > 0.0 ? -std::numeric_limits<double>::infinity()
                              : 2.0 * std::log(2.0 * cp.b + 2.0);
        double l = std::log(r);
        double th = std::atan2(p.y, p.x);
        return 2.0 * std::log(2.0 * cp.b + 2.0) + 2.0 * cp.b * l -
               2.0 * cylinder_log_denominator(cp, l, th);
    };
    if (mu == 0.0) {
        s.u_max = std::log(b + 1.0);
        s.u_argmax = {1.0, 0.0};
    } else {
        // coarse-to-fine search on the cylinder chart
        double best = -std::numeric_limits<double>::infinity();
        double bl = 0.0, bt = 0.0;
        double cl = 0.0, ct = 0.0, span_l = 4.0, span_t = M_PI;
        for (int round = 0; round < 4; ++round) {
            for (int i = 0; i <= 80; ++i) {
                for (int j = 0; j <= 80; ++j) {
                    double l = cl - span_l + 2.0 * span_l * i / 80.0;
                    double th = ct - span_t + 2.0 * span_t * j / 80.0;
                    double val = std::log(2.0 * b + 2.0) + (b + 1.0) * l -
                                 cylinder_log_denominator(cp, l, th);
                    if (val > best) {
                        best = val;
                        bl = l;
                        bt = th;
                    }
                }
            }
            cl = bl;
            ct = bt;
            span_l /= 20.0;
            span_t /= 20.0;
        }
        s.u_max = best;
        s.u_argmax = polar_point(std::exp(bl), bt);
    }
    return s;
}

LiouvilleSolution solution_custom(ScalarField u, ConformalMetric metric, std::string name) {
    LiouvilleSolution s;
    s.name = std::move(name);
    s.u = u;
    s.metric = metric;
    ScalarField uu = s.u;
    ScalarField ff = s.metric.f;
    s.log_density = [uu, ff](Vec2 p) { return 2.0 * ff(p) + 2.0 * uu(p); };
    double best = -std::numeric_limits<double>::infinity();
    Vec2 barg{0, 0};
    for (int i = 0; i < 4096; ++i) {
        double r = 0.01 * std::exp(std::log(1e4) * (i % 64) / 63.0);
        double th = 2.0 * M_PI * (i / 64) / 64.0;
        Vec2 p = polar_point(r, th);
        if (s.u.singularity_distance(p) < 1e-6) continue;
        double v = uu(p);
        if (v > best) {
            best = v;
            barg = p;
        }
    }
    s.u_max = best;
    s.u_argmax = barg;
    return s;
}

LiouvilleSolution solution_by_name(std::string_view spec) {
    auto next = [](std::string_view& sv) {
        auto c = sv.find(':');
        std::string_view head = sv.substr(0, c);
        sv = c == std::string_view::npos ? std::string_view{} : sv.substr(c + 1);
        return head;
    };
    auto parse = [](std::string_view sv, const char* what) {
        double v = 0.0;
        auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (res.ec != std::errc()) throw UsageError(std::string("could not parse ") + what);
        return v;
    };
    std::string_view rest = spec;
    std::string_view head = next(rest);
    if (head == "spherical") return solution_spherical();
    if (head == "gamma") {
        if (rest.empty()) throw UsageError("gamma solution needs a parameter, e.g. gamma:0.75");
        return solution_gamma(parse(rest, "gamma"));
    }
    if (head == "cylinder") {
        if (rest.empty()) throw UsageError("cylinder solution needs b:mu, e.g. cylinder:1:0");
        std::string_view barg = next(rest);
        double b = parse(barg, "cylinder b");
        double mu = rest.empty() ? 0.0 : parse(rest, "cylinder mu");
        return solution_cylinder(b, mu);
    }
    throw UsageError("unknown solution '" + std::string(spec) +
                     "' (valid: spherical, gamma:<g>, cylinder:<b>:<mu>)");
}

std::optional<ScalarField> flat_representative(const LiouvilleSolution& sol) {
    if (sol.name == "spherical") return sol.u;
    if (sol.name.rfind("cylinder", 0) == 0) {
        ScalarField u = sol.u;
        return ScalarField::analytic(
            [u](Vec2 p) { return u(p) - std::log(p.norm()); }, {Vec2{0.0, 0.0}});
    }
    return std::nullopt;
}

double pde_residual(const LiouvilleSolution& sol, Vec2 p, double h) {
    return laplacian_fd(sol.u, p, h) + std::exp(sol.log_density(p));
}

double pde_residual(const LiouvilleSolution& sol, Vec2 p) {
    return pde_residual(sol, p, default_fd_step(sol.u, p));
}

ScalarField kelvin_transform(const ScalarField& w) {
    ScalarField src = w;
    std::vector<Vec2> singular = {Vec2{0.0, 0.0}};
    for (const Vec2& s : w.singularities()) {
        double n2 = s.norm2();
        if (n2 > 0.0) singular.push_back(s / n2);
    }
    return ScalarField::analytic(
        [src](Vec2 p) {
            double n2 = p.norm2();
            return src(p / n2) - std::log(n2);
        },
        std::move(singular));
}

LiouvilleSolution rescale_flat(const LiouvilleSolution& sol, double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("rescale needs lambda > 0");
    if (sol.metric.name != "flat")
        throw UsageError("scaling covariance u(lambda x)+ln(lambda) holds over the flat metric");
    ScalarField u = sol.u;
    LiouvilleSolution out;
    out.name = sol.name + "@" + std::to_string(lambda);
    out.metric = sol.metric;
    out.u = ScalarField::analytic(
        [u, lambda](Vec2 p) { return u(p * lambda) + std::log(lambda); });
    auto ld = sol.log_density;
    out.log_density = [ld, lambda](Vec2 p) {
        return ld(p * lambda) + 2.0 * std::log(lambda);
    };
    out.u_max = sol.u_max + std::log(lambda);
    out.u_argmax = sol.u_argmax / lambda;
    return out;
}

ConeOrderEstimate cone_order_fit(const ScalarField& w, std::span<const double> inner_radii,
                                 std::span<const double> outer_radii) {
    if (inner_radii.size() < 2 || outer_radii.size() < 2)
        throw ParameterError("cone order fit needs at least two radii per regime");
    auto check_span = [](std::span<const double> radii) {
        double lo = radii.front(), hi = radii.front();
        for (double r : radii) {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        if (hi / lo < 99.0)
            throw ParameterError("cone order fit radii must span at least two decades");
    };
    check_span(inner_radii);
    check_span(outer_radii);

    const int kAngles = 32; // suppresses the O(1) angular oscillation of mu != 0 terms
    auto averaged = [&](double r) {
        double s = 0.0;
        for (int a = 0; a < kAngles; ++a)
            s += w(polar_point(r, 2.0 * M_PI * (a + 0.5) / kAngles));
        return s / kAngles;
    };
    auto regime = [&](std::span<const double> radii, double& slope, double& res) {
        std::vector<double> xs, ys;
        for (double r : radii) {
            xs.push_back(std::log(r));
            ys.push_back(averaged(r));
        }
        slope = fit_slope(xs, ys, &res);
    };
    ConeOrderEstimate est;
    regime(inner_radii, est.beta1, est.residual1);
    regime(outer_radii, est.beta2, est.residual2);
    est.constraints_ok = est.beta1 > -1.0 && est.beta2 < -1.0;
    est.conical = est.residual1 < 0.05 && est.residual2 < 0.05;
    return est;
}

ConeOrderEstimate cone_order_fit(const ScalarField& w) {
    const double inner[] = {1e-4, 1e-3, 1e-2};
    const double outer[] = {1e2, 1e3, 1e4};
    return cone_order_fit(w, inner, outer);
}

}  // namespace liouville
