#pragma once

#include <functional>

#include "liouville/field.hpp"
#include "liouville/metric.hpp"
#include "liouville/quad1d.hpp"
#include "liouville/solution.hpp"

namespace liouville {

struct PlanarIntegral {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
    double tail_fraction = 0.0;   // share contributed beyond the split radius
    double growth_exponent = 0.0; // fitted decay exponent p of density ~ rho^-p
    int panels = 0;
};

struct PlaneQuadOptions {
    double split_radius = 10.0; // disk/tail split R0
    double inner_radius = 0.0;  // >0 to start the radial sweep off the origin
    int min_angular_points = 16;
};

// Whole-plane integral of a nonnegative density: polar decomposition, adaptive
// radial quadrature on [inner, R0], and a tail compactified by s = 1/rho. A
// tail decaying slower than rho^-2 is reported as divergent (value NaN), never
// as a large float.
PlanarIntegral integrate_plane(const std::function<double(Vec2)>& density, double tol,
                               const PlaneQuadOptions& opts = {});
PlanarIntegral integrate_plane(const ScalarField& density, double tol,
                               const PlaneQuadOptions& opts = {});

// Mean of a field over the circle of the given radius.
double angular_average(const std::function<double(Vec2)>& f, double radius,
                       int n_angles = 32);

// alpha := -(1/2pi) * integral of e^{2f+2u} over the plane. Throws
// DivergenceError when the total curvature is infinite.
double alpha_of(const LiouvilleSolution& sol, double tol = 1e-6);

// Total mass of the solution's curvature density e^{2f+2u} (the quantity
// -2*pi*alpha), exposed separately for the punctured-plane families.
PlanarIntegral total_mass(const LiouvilleSolution& sol, double tol = 1e-6);

// integral of K dg = K e^{2f} dx over the plane.
double total_gauss_curvature(const ConformalMetric& metric, double tol = 1e-6);

}  // namespace liouville
