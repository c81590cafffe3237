#include "charges/measure.hpp"

#include <cmath>
#include <numeric>

#include "charges/errors.hpp"

namespace charges {

DiscreteMeasure::DiscreteMeasure(std::shared_ptr<const FiniteMetricSpace> space,
                                 std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (!space_) throw StructuralError("measure needs a space");
    if (static_cast<int>(weights_.size()) != space_->size())
        throw StructuralError("weight count does not match point count");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw DomainError("weight invariant: weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > kTolMass)
        throw DomainError("weight invariant: weights must sum to 1");
}

DiscreteMeasure make_measure(std::shared_ptr<const FiniteMetricSpace> space,
                             std::vector<double> weights, bool normalize) {
    if (normalize) {
        double total = std::accumulate(weights.begin(), weights.end(), 0.0);
        if (total <= 0.0) throw DomainError("cannot normalize a zero-mass weight vector");
        for (double& w : weights) w /= total;
    }
    return DiscreteMeasure(std::move(space), std::move(weights));
}

double measure_of(const DiscreteMeasure& measure, const std::vector<int>& subset) {
    double mass = 0.0;
    for (int i : subset) {
        if (i < 0 || i >= measure.size()) throw DomainError("subset index out of range");
        mass += measure.weight(i);
    }
    return mass;
}

double integrate(const DiscreteMeasure& measure, const std::vector<double>& values) {
    if (values.size() != measure.weights().size())
        throw StructuralError("function values do not match point count");
    double sum = 0.0;
    for (int i = 0; i < measure.size(); ++i) {
        if (measure.weight(i) == 0.0) continue;
        if (!std::isfinite(values[i]))
            throw NumericError("non-finite function value on the support");
        sum += measure.weight(i) * values[i];
    }
    return sum;
}

double integrate(const DiscreteMeasure& measure,
                 const std::function<double(const std::vector<double>&)>& f) {
    if (!measure.space().has_points())
        throw DomainError("coordinate integrand needs a space with coordinates");
    double sum = 0.0;
    for (int i = 0; i < measure.size(); ++i) {
        if (measure.weight(i) == 0.0) continue;
        double v = f(measure.space().point(i));
        if (!std::isfinite(v)) throw NumericError("non-finite function value on the support");
        sum += measure.weight(i) * v;
    }
    return sum;
}

double Atoms::total() const {
    double t = 0.0;
    for (double w : weights) t += w;
    return t;
}

double Atoms::mass_of(const std::vector<int>& subset) const {
    double mass = 0.0;
    for (int i : subset) {
        if (i < 0 || i >= size()) throw DomainError("atom index out of range");
        mass += weights[i];
    }
    return mass;
}

double Atoms::integrate(const std::function<double(const std::vector<double>&)>& f) const {
    double sum = 0.0;
    for (int i = 0; i < size(); ++i) {
        if (weights[i] == 0.0) continue;
        double v = f(coords[i]);
        if (!std::isfinite(v)) throw NumericError("non-finite function value on the support");
        sum += weights[i] * v;
    }
    return sum;
}

DiscreteMeasure measure_from_atoms(const Atoms& atoms, double bound) {
    auto space = std::make_shared<FiniteMetricSpace>(
        FiniteMetricSpace::from_points(atoms.coords, bound));
    return DiscreteMeasure(std::move(space), atoms.weights);
}

} // namespace charges
