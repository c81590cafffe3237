#pragma once

#include <string>
#include <vector>

namespace charges {

// Finite metric space: point handles with a cached symmetric distance matrix
// and a declared diameter bound. Immutable after construction.
class FiniteMetricSpace {
public:
    static FiniteMetricSpace from_matrix(std::vector<std::vector<double>> dist,
                                         double bound);
    // Euclidean distances derived from coordinates.
    static FiniteMetricSpace from_points(std::vector<std::vector<double>> points,
                                         double bound);
    static FiniteMetricSpace from_points_auto_bound(std::vector<std::vector<double>> points);

    int size() const { return static_cast<int>(dist_.size()); }
    double d(int i, int j) const { return dist_[i][j]; }
    double bound() const { return bound_; }

    bool has_points() const { return !points_.empty(); }
    const std::vector<std::vector<double>>& points() const { return points_; }
    const std::vector<double>& point(int i) const { return points_[i]; }
    const std::vector<std::vector<double>>& matrix() const { return dist_; }

private:
    FiniteMetricSpace() = default;
    std::vector<std::vector<double>> points_;  // empty when only a matrix was given
    std::vector<std::vector<double>> dist_;
    double bound_ = 0.0;
};

double euclidean(const std::vector<double>& a, const std::vector<double>& b);

struct MetricViolation {
    enum class Kind { Identity, Symmetry, Negative, Triangle, Bound };
    Kind kind;
    int i = -1, j = -1, k = -1;
    double amount = 0.0;  // how far past the tolerance
    std::string describe() const;
};

struct ValidationReport {
    std::vector<MetricViolation> violations;
    bool valid() const { return violations.empty(); }
};

ValidationReport validate_metric(const FiniteMetricSpace& space, double tol = 1e-9);

// Max pairwise distance within `subset`; 0 for singletons.
double diameter(const FiniteMetricSpace& space, const std::vector<int>& subset);

struct SeparatedSet {
    std::vector<int> indices;  // pairwise distances strictly exceed eps
    double eps = 0.0;
};

// Greedy: repeatedly take the lowest-index point farther than eps from every
// point chosen so far. Stops at max_k points (pass a huge max_k for "all").
SeparatedSet greedy_separated_set(const FiniteMetricSpace& space, double eps,
                                  int max_k = 1 << 30);

struct CoverCertificate {
    std::vector<int> centers;
    double radius = 0.0;
    bool covered = false;
};

// Greedy cover: centers are the full greedy separated set, so the center count
// upper-bounds the eps-covering number and lower-bounds the eps-packing number.
CoverCertificate covering_report(const FiniteMetricSpace& space, double eps);

struct Partition {
    std::vector<std::vector<int>> cells;  // disjoint, covering all indices
    std::vector<int> reps;                // reps[k] is a member of cells[k]
    double mesh = 0.0;                    // max cell diameter
};

// Nearest-center refinement of a delta/2 greedy cover; every cell has
// diameter at most delta. Ties go to the lowest center index.
Partition build_partition(const FiniteMetricSpace& space, double delta);

} // namespace charges
