#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "liouville/grid.hpp"
#include "liouville/metric.hpp"
#include "liouville/solution.hpp"

namespace liouville {

struct Contour {
    std::vector<Vec2> points; // chart coordinates
    bool closed = false;
};

// Oriented marching-squares contours of {u = t}: the upper level set
// {u > t} lies on the left of the travel direction.
struct ContourSet {
    GridSpec chart;
    double threshold = 0.0;
    std::vector<Contour> contours;
    // Metric length of the grid-boundary pieces of the clipped region
    // boundary; nonzero when the level set is cut by the box.
    double truncation_length = 0.0;
};

// Throws LevelSetRangeError unless t is strictly between the sampled min and
// max of u on the grid.
ContourSet extract_levelset(const ScalarField& u, const GridSpec& grid, double t);

// Length in the metric: sum of e^{f(midpoint)} x Euclidean segment length.
double metric_length(const ContourSet& cs, const ConformalMetric& metric);
// Plane-Euclidean polyline length (diagnostics and flat-metric tests).
double euclid_length(const ContourSet& cs);

// Area of {u > t} in the metric: cell sums with linear partial-cell fractions.
double metric_area(const ScalarField& u, const GridSpec& grid, double t,
                   const ConformalMetric& metric);

// F(t)-style region integral: integral of e^{log_density} over {u > t}.
double region_mass(const ScalarField& u, const GridSpec& grid, double t,
                   const std::function<double(Vec2)>& log_density);

// Contour integral of |grad u| with the Euclidean line element; by conformal
// invariance in 2-D this equals the metric flux int |grad u|_g dS_g.
double boundary_flux(const ContourSet& cs, const ScalarField& u);

// Contour integral of e^{2f}/|grad u| ds (the coarea weight (1/|grad u|_g) dS_g).
double boundary_inv_flux(const ContourSet& cs, const ScalarField& u,
                         const ConformalMetric& metric);

struct LevelSetRow {
    double t = 0.0;
    double area_g = 0.0;    // A(Omega_t)
    double length_g = 0.0;  // L(boundary)
    double mass = 0.0;      // F(t)
    double flux = 0.0;      // divergence-theorem partner of F(t)
    double inv_flux = 0.0;  // coarea weight integral
    double iso_ratio = 0.0; // L^2/(4 pi beta A); NaN when vacuous
    double ode_lhs = 0.0;   // (F^2)'(t), central difference
    double ode_rhs = 0.0;   // -8 pi beta e^{ 2t} A
    double ode_margin_rel = 0.0; // (rhs - lhs)/|rhs|
    double truncation_length = 0.0;
    bool advisory = false;  // box truncation exceeded 1% of L
};

struct LevelSetProfile {
    std::string solution;
    double beta = 0.0;
    bool isoperimetric_vacuous = false; // beta <= 0: inequality is trivial
    std::vector<LevelSetRow> rows;
};

// 40 thresholds spanning [u_max - 8, u_max - 0.2] by default.
std::vector<double> default_thresholds(const LiouvilleSolution& sol, int count = 40);

// Chart sized to enclose the level set {u > t_low} with ~30% margin;
// cartesian box for plane solutions, log-polar annulus for punctured ones.
GridSpec levelset_chart(const LiouvilleSolution& sol, double t_low, int grid_n);

// The full per-threshold machinery: every row quantity above, one adaptive
// chart per threshold.
LevelSetProfile levelset_profile(const LiouvilleSolution& sol, double beta,
                                 std::span<const double> ts, int grid_n = 512);

// Brendle ratio rows only (beta <= 0 marks the profile vacuous).
LevelSetProfile isoperimetric_check(const LiouvilleSolution& sol, double beta,
                                    std::span<const double> ts, int grid_n = 512);

struct OdeMargin {
    double t, lhs, rhs, margin_rel;
};

// (F^2)' <= -8 pi beta e^{2t} A margins, recomputed from a profile for the
// given beta (lhs is beta-independent).
std::vector<OdeMargin> ode_inequality_check(const LevelSetProfile& profile, double beta);

}  // namespace liouville
