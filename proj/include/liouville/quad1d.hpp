#pragma once

#include <functional>

namespace liouville {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = false;
    int panels = 0;
};

// Adaptive Gauss-Kronrod 7-15 with worst-panel bisection. Stops when the
// summed error estimate is below max(abs_tol, rel_tol*|value|). Kronrod nodes
// are interior, so integrable endpoint singularities are fine.
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol = 0.0, int max_panels = 4000);

// Integral of a smooth 2*pi-periodic function over one period, by trapezoid
// doubling (spectral for smooth integrands).
QuadResult integrate_periodic(const std::function<double(double)>& f, double abs_tol,
                              int max_points = 16384);

}  // namespace liouville
