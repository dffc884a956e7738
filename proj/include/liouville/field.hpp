#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "liouville/geometry.hpp"
#include "liouville/grid.hpp"

namespace liouville {

// A real-valued function on a planar domain: either a closed-form evaluator or
// node samples on a GridSpec. Immutable after construction; copies share state.
//
// Evaluating at a marked singular point throws DomainError; a non-finite value
// anywhere else throws EvaluationError (a NaN here is always a bug upstream).
class ScalarField {
  public:
    using Evaluator = std::function<double(Vec2)>;

    static ScalarField analytic(Evaluator f, std::vector<Vec2> singularities = {});
    static ScalarField sampled(GridSpec spec, std::vector<double> node_values,
                               std::vector<Vec2> singularities = {});
    // Sample an analytic field onto a grid (keeps the singularity markers).
    static ScalarField sample_of(const ScalarField& src, const GridSpec& spec);

    double operator()(Vec2 p) const;
    double operator()(double x, double y) const { return (*this)({x, y}); }

    bool is_sampled() const;
    const GridSpec& grid() const;                  // UsageError if analytic
    double node_value(int i, int j) const;         // UsageError if analytic
    const std::vector<double>& node_values() const;

    const std::vector<Vec2>& singularities() const;
    // Distance from p to the nearest singular marker (+inf when none).
    double singularity_distance(Vec2 p) const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// Pointwise exp of a field's evaluator (used for densities given in log form).
ScalarField exp_field(const ScalarField& log_field);

}  // namespace liouville
