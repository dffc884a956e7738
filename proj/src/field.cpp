#include "liouville/field.hpp"

#include <cmath>
#include <limits>

#include "liouville/errors.hpp"

namespace liouville {

struct ScalarField::Impl {
    Evaluator eval;                 // empty for sampled fields
    std::optional<GridSpec> spec;
    std::vector<double> values;
    std::vector<Vec2> singular;
};

namespace {

bool at_singularity(const std::vector<Vec2>& singular, Vec2 p) {
    // Flags the marked point itself; proximity policies (stencil clearance,
    // grid cutoffs) belong to the callers via singularity_distance.
    for (const Vec2& s : singular)
        if ((p - s).norm() < 1e-100) return true;
    return false;
}

double bilinear_eval(const GridSpec& g, const std::vector<double>& v, Vec2 p) {
    Vec2 q;
    if (g.kind == GridSpec::Kind::cartesian) {
        q = p;
    } else {
        double r = p.norm();
        double th = std::atan2(p.y, p.x);
        if (th < 0) th += 2.0 * M_PI;
        q = {g.log_radial ? std::log(r) : r, th};
    }
    double fx = (q.x - g.qx_min()) / g.step_x();
    double fy = (q.y - g.qy_min()) / g.step_y();
    int n = g.resolution;
    if (fx < -1e-9 || fx > n - 1 + 1e-9)
        throw DomainError("point outside sampled grid");
    int i = std::min(static_cast<int>(std::floor(fx)), n - 2);
    i = std::max(i, 0);
    double ax = fx - i;
    int j, j1;
    double ay;
    if (g.periodic_y()) {
        j = static_cast<int>(std::floor(fy)) % n;
        if (j < 0) j += n;
        ay = fy - std::floor(fy);
        j1 = (j + 1) % n;
    } else {
        if (fy < -1e-9 || fy > n - 1 + 1e-9)
            throw DomainError("point outside sampled grid");
        j = std::max(std::min(static_cast<int>(std::floor(fy)), n - 2), 0);
        ay = fy - j;
        j1 = j + 1;
    }
    double v00 = v[g.index(i, j)], v10 = v[g.index(i + 1, j)];
    double v01 = v[g.index(i, j1)], v11 = v[g.index(i + 1, j1)];
    return (1 - ax) * (1 - ay) * v00 + ax * (1 - ay) * v10 +
           (1 - ax) * ay * v01 + ax * ay * v11;
}

}  // namespace

ScalarField ScalarField::analytic(Evaluator f, std::vector<Vec2> singularities) {
    auto impl = std::make_shared<Impl>();
    impl->eval = std::move(f);
    impl->singular = std::move(singularities);
    ScalarField field;
    field.impl_ = std::move(impl);
    return field;
}

ScalarField ScalarField::sampled(GridSpec spec, std::vector<double> node_values,
                                 std::vector<Vec2> singularities) {
    spec.validate();
    if (node_values.size() != static_cast<size_t>(spec.resolution) * spec.resolution)
        throw ParameterError("sampled field needs resolution^2 node values");
    auto impl = std::make_shared<Impl>();
    impl->spec = spec;
    impl->values = std::move(node_values);
    impl->singular = std::move(singularities);
    ScalarField field;
    field.impl_ = std::move(impl);
    return field;
}

ScalarField ScalarField::sample_of(const ScalarField& src, const GridSpec& spec) {
    spec.validate();
    if (spec.kind == GridSpec::Kind::polar && spec.inner_radius <= 0.0 &&
        at_singularity(src.singularities(), {0.0, 0.0}))
        throw ParameterError("punctured field needs polar grid with inner_radius > 0");
    int n = spec.resolution;
    std::vector<double> values(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            values[spec.index(i, j)] = src(spec.node_point(i, j));
    return sampled(spec, std::move(values), src.singularities());
}

double ScalarField::operator()(Vec2 p) const {
    const Impl& im = *impl_;
    if (at_singularity(im.singular, p))
        throw DomainError("evaluation at a singular point");
    double v = im.spec ? bilinear_eval(*im.spec, im.values, p) : im.eval(p);
    if (!std::isfinite(v)) throw EvaluationError("field evaluated to a non-finite value");
    return v;
}

bool ScalarField::is_sampled() const { return impl_->spec.has_value(); }

const GridSpec& ScalarField::grid() const {
    if (!impl_->spec) throw UsageError("analytic field has no grid");
    return *impl_->spec;
}

double ScalarField::node_value(int i, int j) const {
    if (!impl_->spec) throw UsageError("analytic field has no nodes");
    return impl_->values[impl_->spec->index(i, j)];
}

const std::vector<double>& ScalarField::node_values() const {
    if (!impl_->spec) throw UsageError("analytic field has no nodes");
    return impl_->values;
}

const std::vector<Vec2>& ScalarField::singularities() const { return impl_->singular; }

double ScalarField::singularity_distance(Vec2 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const Vec2& s : impl_->singular) d = std::min(d, (p - s).norm());
    return d;
}

ScalarField exp_field(const ScalarField& log_field) {
    ScalarField src = log_field;
    return ScalarField::analytic([src](Vec2 p) { return std::exp(src(p)); },
                                 src.singularities());
}

}  // namespace liouville
