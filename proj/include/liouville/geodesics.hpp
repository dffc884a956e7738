#pragma once

#include <memory>
#include <span>
#include <vector>

#include "liouville/grid.hpp"
#include "liouville/metric.hpp"

namespace liouville {

// Intrinsic distance from the origin along a ray, for radially symmetric
// metrics: r(R) = int_0^R e^{f(s)} ds (geodesics from the center are rays).
double radial_distance(const ConformalMetric& metric, double R, double tol = 1e-9);

// Intrinsic distance field from a base point under a conformal metric.
// method radial wraps the ray oracle (base at the origin); eikonal holds a
// first-order upwind fast-marching solve of |grad r| = e^f on the grid chart.
class DistanceField {
  public:
    enum class Method { radial, eikonal };

    double operator()(Vec2 p) const;  // plane point
    double node(int i, int j) const;  // eikonal only
    const GridSpec& grid() const;     // eikonal only
    Method method() const;
    Vec2 base() const;
    const ConformalMetric& metric() const;

    static DistanceField radial_oracle(const ConformalMetric& metric);

  private:
    friend DistanceField eikonal_distance(const ConformalMetric&, const GridSpec&, Vec2);
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

DistanceField eikonal_distance(const ConformalMetric& metric, const GridSpec& grid,
                               Vec2 base);

// Metric area of the sub-level set {r < t}: grid summation with partial-cell
// correction for eikonal fields, radial quadrature for the oracle.
double ball_area(const DistanceField& dist, double t);

// Fraction of a grid cell where the bilinear interpolant of the four corner
// values (counter-clockwise from the lower-left) exceeds t; saddle cells are
// resolved by the cell-center average, matching the marching-squares contour.
double cell_fraction_above(double v00, double v10, double v11, double v01, double t);

struct AvrReport {
    double beta_area = 0.0; // extrapolated Area(B(p,t))/(pi t^2)
    double beta_gb = 0.0;   // 1 - (1/2pi) int K dg
    double gap = 0.0;
    bool gb_applicable = true; // HLT identity needs a plane-domain metric
    double tmax = 0.0;
    // best available estimate: Gauss-Bonnet when applicable, else the fit
    double beta() const { return gb_applicable ? beta_gb : beta_area; }
};

// Asymptotic volume ratio, fitted as the 1/t -> 0 intercept of Area/(pi t^2)
// over the top decade of t. CompletenessError for finite-diameter metrics.
AvrReport avr(const ConformalMetric& metric, double tmax = 0.0, double tol = 1e-7,
              int grid_n = 512);

// Fitted slope of ln r(x) against ln|x| (the Hartman/Li-Tam limit).
double distance_slope(const ConformalMetric& metric, std::span<const double> radii);
double distance_slope(const ConformalMetric& metric);

}  // namespace liouville
