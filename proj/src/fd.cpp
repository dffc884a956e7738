#include "liouville/fd.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/errors.hpp"

namespace liouville {

namespace {

void require_clear_of_singularities(const ScalarField& field, Vec2 p, double h) {
    if (field.singularity_distance(p) <= 2.0 * h)
        throw DomainError("stencil point within 2h of a singularity");
}

// Grid-native stencils at the node nearest to p.
double sampled_laplacian(const ScalarField& field, Vec2 p) {
    const GridSpec& g = field.grid();
    Vec2 q;
    if (g.kind == GridSpec::Kind::cartesian) {
        q = p;
    } else {
        double r = p.norm();
        double th = std::atan2(p.y, p.x);
        if (th < 0) th += 2.0 * M_PI;
        q = {g.log_radial ? std::log(r) : r, th};
    }
    int n = g.resolution;
    int i = static_cast<int>(std::lround((q.x - g.qx_min()) / g.step_x()));
    int j = static_cast<int>(std::lround((q.y - g.qy_min()) / g.step_y()));
    if (i < 1 || i > n - 2) throw DomainError("node too close to grid boundary");
    int jm, jp;
    if (g.periodic_y()) {
        j = ((j % n) + n) % n;
        jm = (j + n - 1) % n;
        jp = (j + 1) % n;
    } else {
        if (j < 1 || j > n - 2) throw DomainError("node too close to grid boundary");
        jm = j - 1;
        jp = j + 1;
    }
    double hx = g.step_x(), hy = g.step_y();
    double c = field.node_value(i, j);
    double uxx = (field.node_value(i - 1, j) - 2 * c + field.node_value(i + 1, j)) / (hx * hx);
    double uyy = (field.node_value(i, jm) - 2 * c + field.node_value(i, jp)) / (hy * hy);
    if (g.kind == GridSpec::Kind::cartesian) return uxx + uyy;
    if (g.log_radial) {
        // ds^2 = e^{2l}(dl^2 + dth^2): Laplacian = e^{-2l}(u_ll + u_thth)
        return std::exp(-2.0 * g.node_qx(i)) * (uxx + uyy);
    }
    double r = g.node_qx(i);
    double ur = (field.node_value(i + 1, j) - field.node_value(i - 1, j)) / (2 * hx);
    return uxx + ur / r + uyy / (r * r);
}

Vec2 sampled_gradient(const ScalarField& field, Vec2 p) {
    const GridSpec& g = field.grid();
    if (g.kind != GridSpec::Kind::cartesian)
        throw UsageError("sampled gradient implemented for cartesian grids");
    int n = g.resolution;
    int i = static_cast<int>(std::lround((p.x - g.qx_min()) / g.step_x()));
    int j = static_cast<int>(std::lround((p.y - g.qy_min()) / g.step_y()));
    if (i < 1 || i > n - 2 || j < 1 || j > n - 2)
        throw DomainError("node too close to grid boundary");
    double h = g.step_x();
    return {(field.node_value(i + 1, j) - field.node_value(i - 1, j)) / (2 * h),
            (field.node_value(i, j + 1) - field.node_value(i, j - 1)) / (2 * h)};
}

}  // namespace

double default_fd_step(const ScalarField& field, Vec2 p) {
    double d = field.singularity_distance(p);
    double scale = std::max(1.0, 0.1 * p.norm());
    if (std::isfinite(d)) scale = std::min(scale, std::max(0.25 * d, 0.01));
    return 1e-3 * scale;
}

double laplacian_fd(const ScalarField& field, Vec2 p, double h) {
    if (!(h > 0.0)) throw ParameterError("stencil step must be positive");
    if (field.is_sampled()) return sampled_laplacian(field, p);
    require_clear_of_singularities(field, p, h);
    double c = field(p);
    double s = field({p.x + h, p.y}) + field({p.x - h, p.y}) +
               field({p.x, p.y + h}) + field({p.x, p.y - h});
    double v = (s - 4.0 * c) / (h * h);
    if (!std::isfinite(v)) throw EvaluationError("non-finite Laplacian stencil");
    return v;
}

double laplacian_fd(const ScalarField& field, Vec2 p) {
    return laplacian_fd(field, p, default_fd_step(field, p));
}

Vec2 gradient_fd(const ScalarField& field, Vec2 p, double h) {
    if (!(h > 0.0)) throw ParameterError("stencil step must be positive");
    if (field.is_sampled()) return sampled_gradient(field, p);
    require_clear_of_singularities(field, p, h);
    Vec2 v = {(field({p.x + h, p.y}) - field({p.x - h, p.y})) / (2 * h),
              (field({p.x, p.y + h}) - field({p.x, p.y - h})) / (2 * h)};
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
        throw EvaluationError("non-finite gradient stencil");
    return v;
}

Vec2 gradient_fd(const ScalarField& field, Vec2 p) {
    return gradient_fd(field, p, default_fd_step(field, p));
}

}  // namespace liouville
