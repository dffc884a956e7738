#pragma once

#include <cmath>

#include "liouville/errors.hpp"
#include "liouville/geometry.hpp"

namespace liouville {

// Structured grid over a planar chart. Cartesian grids cover the square
// [-extent, extent]^2. Polar grids cover the annulus inner_radius <= |x| <=
// extent with the angular axis periodic; with log_radial the radial nodes are
// uniform in ln r, which makes the chart conformal (the only polar variant the
// geometric operations accept).
struct GridSpec {
    enum class Kind { cartesian, polar };

    Kind kind = Kind::cartesian;
    double extent = 10.0;      // box half-width, or outer radius for polar
    int resolution = 256;      // nodes per axis
    double inner_radius = 0.0; // polar only; must be > 0 for punctured fields
    bool log_radial = false;   // polar only

    static GridSpec cartesian(double half_width, int resolution) {
        GridSpec g;
        g.kind = Kind::cartesian;
        g.extent = half_width;
        g.resolution = resolution;
        g.validate();
        return g;
    }

    static GridSpec polar(double inner, double outer, int resolution, bool log_spaced = true) {
        GridSpec g;
        g.kind = Kind::polar;
        g.extent = outer;
        g.inner_radius = inner;
        g.resolution = resolution;
        g.log_radial = log_spaced;
        g.validate();
        return g;
    }

    void validate() const {
        if (resolution < 8) throw ParameterError("grid resolution must be >= 8 per axis");
        if (!(extent > 0.0) || !std::isfinite(extent))
            throw ParameterError("grid extent must be positive and finite");
        if (kind == Kind::polar) {
            if (inner_radius < 0.0 || inner_radius >= extent)
                throw ParameterError("polar grid needs 0 <= inner_radius < outer radius");
            if (log_radial && inner_radius <= 0.0)
                throw ParameterError("log-spaced polar grid needs inner_radius > 0");
        }
    }

    bool periodic_y() const { return kind == Kind::polar; }

    // Chart coordinates. Axis x: cartesian x, or r (ln r when log_radial).
    // Axis y: cartesian y, or theta in [0, 2*pi).
    double qx_min() const {
        if (kind == Kind::cartesian) return -extent;
        return log_radial ? std::log(inner_radius) : inner_radius;
    }
    double qx_max() const {
        if (kind == Kind::cartesian) return extent;
        return log_radial ? std::log(extent) : extent;
    }
    double qy_min() const { return kind == Kind::cartesian ? -extent : 0.0; }
    double qy_max() const {
        return kind == Kind::cartesian ? extent : 6.283185307179586476925287;
    }

    // Periodic axis: node resolution-1 is one step short of qy_max.
    double step_x() const { return (qx_max() - qx_min()) / (resolution - 1); }
    double step_y() const {
        int n = periodic_y() ? resolution : resolution - 1;
        return (qy_max() - qy_min()) / n;
    }

    double node_qx(int i) const { return qx_min() + i * step_x(); }
    double node_qy(int j) const { return qy_min() + j * step_y(); }

    Vec2 chart_to_plane(Vec2 q) const {
        if (kind == Kind::cartesian) return q;
        double r = log_radial ? std::exp(q.x) : q.x;
        return polar_point(r, q.y);
    }

    // |dx/dq| for conformal charts (cartesian or log-polar).
    double plane_jacobian(Vec2 q) const {
        if (kind == Kind::cartesian) return 1.0;
        if (!log_radial)
            throw UsageError("linear-radius polar charts are not conformal; use log_radial");
        return std::exp(q.x);
    }

    bool conformal_chart() const {
        return kind == Kind::cartesian || log_radial;
    }

    Vec2 node_point(int i, int j) const { return chart_to_plane({node_qx(i), node_qy(j)}); }

    int index(int i, int j) const { return j * resolution + i; }
};

}  // namespace liouville
