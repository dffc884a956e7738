#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

// Evaluation at/near a singular point or outside the valid stencil region.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A stencil or quadrature produced a non-finite value.
struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

// Parameter outside the range an operation is defined for.
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Operation applied to an object of the wrong kind (e.g. radial oracle on a
// non-radial metric).
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// An improper integral did not converge.
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Metric has finite diameter; asymptotic quantities undefined.
struct CompletenessError : std::runtime_error {
    explicit CompletenessError(const std::string& what) : std::runtime_error(what) {}
};

// Requested level set is empty or the whole grid.
struct LevelSetRangeError : std::runtime_error {
    explicit LevelSetRangeError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace liouville
