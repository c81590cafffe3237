#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "charges/metric.hpp"

namespace charges {

inline constexpr double kTolMass = 1e-9;

// Finitely supported probability measure: one nonnegative weight per point of
// a finite metric space, summing to 1.
class DiscreteMeasure {
public:
    DiscreteMeasure(std::shared_ptr<const FiniteMetricSpace> space,
                    std::vector<double> weights);

    const FiniteMetricSpace& space() const { return *space_; }
    std::shared_ptr<const FiniteMetricSpace> space_ptr() const { return space_; }
    const std::vector<double>& weights() const { return weights_; }
    double weight(int i) const { return weights_[i]; }
    int size() const { return static_cast<int>(weights_.size()); }

private:
    std::shared_ptr<const FiniteMetricSpace> space_;
    std::vector<double> weights_;
};

DiscreteMeasure make_measure(std::shared_ptr<const FiniteMetricSpace> space,
                             std::vector<double> weights, bool normalize = false);

double measure_of(const DiscreteMeasure& measure, const std::vector<int>& subset);

// Sum of weight[i] * values[i]; values must be finite wherever mass sits.
double integrate(const DiscreteMeasure& measure, const std::vector<double>& values);
double integrate(const DiscreteMeasure& measure,
                 const std::function<double(const std::vector<double>&)>& f);

// Weighted point cloud in a shared coordinate domain. Resolution-indexed
// families generate these; a full metric space is only materialized when a
// transport solve needs one.
struct Atoms {
    std::vector<std::vector<double>> coords;
    std::vector<double> weights;

    int size() const { return static_cast<int>(weights.size()); }
    double total() const;
    double mass_of(const std::vector<int>& subset) const;
    double integrate(const std::function<double(const std::vector<double>&)>& f) const;
};

DiscreteMeasure measure_from_atoms(const Atoms& atoms, double bound);

// Finite-scale model of an internal measure: one weighted point cloud per
// resolution index N, all embedded in a common coordinate domain.
struct MeasureFamily {
    std::function<Atoms(int)> at;
};

} // namespace charges
