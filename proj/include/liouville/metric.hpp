#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "liouville/field.hpp"

namespace liouville {

// Conformal metric g = e^{2f} g0 on the plane or punctured plane. Immutable
// after construction; safe for shared concurrent reads.
struct ConformalMetric {
    enum class Domain { plane, punctured_plane };

    std::string name = "flat";
    Domain domain = Domain::plane;
    ScalarField f;                                // log conformal factor
    std::optional<ScalarField> curvature;         // closed-form K when known
    bool radial = false;                          // f depends only on |x|
    double inner_cutoff = 1e-3;                   // punctured-plane grid ops stay outside

    double length_weight(Vec2 p) const;           // e^{f}
    double area_weight(Vec2 p) const;             // e^{2f}

    // -e^{-2f} * laplacian(f); uses the closed form when available.
    double gauss_curvature(Vec2 p) const;
    // Always the finite-difference route (for oracle cross-checks).
    double gauss_curvature_fd(Vec2 p, double h) const;
};

ConformalMetric metric_flat();
// e^{2f} = gamma / (1+|x|^2)^{2-2*gamma}, gamma in [1/2, 1);
// K = 4(1-gamma) / (gamma (1+|x|^2)^{2*gamma}).
ConformalMetric metric_gamma(double gamma);
// e^{2f} = 1/|z|^2 on the punctured plane: the flat cylinder S^1 x R.
ConformalMetric metric_cylinder_pullback();
// f = ln(2/(1+|x|^2)): round sphere minus a point, K = 1 (not complete).
ConformalMetric metric_spherical();

// Parse "flat", "gamma:0.75", "cylinder", "spherical".
ConformalMetric metric_by_name(std::string_view spec);

// True when every geodesic ray from the base has infinite length. Decided by
// the radial oracle; all built-ins are radially symmetric.
bool is_complete(const ConformalMetric& metric);

}  // namespace liouville
