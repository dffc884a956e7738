#pragma once

#include "liouville/field.hpp"

namespace liouville {

// Step that balances truncation against roundoff for fields whose features
// live at scale ~min(1, distance to the nearest singularity).
double default_fd_step(const ScalarField& field, Vec2 p);

// 5-point second-order Laplacian. Analytic fields use the given step h;
// sampled fields use the grid-native stencil at the nearest node (never
// interpolation-then-differencing) and ignore h.
double laplacian_fd(const ScalarField& field, Vec2 p, double h);
double laplacian_fd(const ScalarField& field, Vec2 p);

// Central-difference gradient, O(h^2), same domain rules as laplacian_fd.
Vec2 gradient_fd(const ScalarField& field, Vec2 p, double h);
Vec2 gradient_fd(const ScalarField& field, Vec2 p);

}  // namespace liouville
