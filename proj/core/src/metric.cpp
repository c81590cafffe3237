#include "charges/metric.hpp"

#include <algorithm>
#include <cmath>

#include "charges/errors.hpp"

namespace charges {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw StructuralError("coordinate dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double t = a[k] - b[k];
        s += t * t;
    }
    return std::sqrt(s);
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<std::vector<double>> dist,
                                                 double bound) {
    const std::size_t n = dist.size();
    for (const auto& row : dist)
        if (row.size() != n) throw StructuralError("distance matrix is not square");
    if (!std::isfinite(bound)) throw DomainError("diameter bound must be finite");
    FiniteMetricSpace s;
    s.dist_ = std::move(dist);
    s.bound_ = bound;
    return s;
}

FiniteMetricSpace FiniteMetricSpace::from_points(std::vector<std::vector<double>> points,
                                                 double bound) {
    const std::size_t n = points.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = euclidean(points[i], points[j]);
    FiniteMetricSpace s = from_matrix(std::move(dist), bound);
    s.points_ = std::move(points);
    return s;
}

FiniteMetricSpace FiniteMetricSpace::from_points_auto_bound(
        std::vector<std::vector<double>> points) {
    double bound = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            bound = std::max(bound, euclidean(points[i], points[j]));
    return from_points(std::move(points), bound);
}

std::string MetricViolation::describe() const {
    switch (kind) {
        case Kind::Identity: return "identity violated at " + std::to_string(i);
        case Kind::Symmetry:
            return "symmetry violated at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        case Kind::Negative:
            return "negative distance at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        case Kind::Triangle:
            return "triangle violated at (" + std::to_string(i) + "," + std::to_string(j) +
                   "," + std::to_string(k) + ")";
        case Kind::Bound:
            return "bound exceeded at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    return "?";
}

ValidationReport validate_metric(const FiniteMetricSpace& space, double tol) {
    const int n = space.size();
    ValidationReport report;
    using K = MetricViolation::Kind;
    for (int i = 0; i < n; ++i) {
        if (std::abs(space.d(i, i)) > tol)
            report.violations.push_back({K::Identity, i, i, -1, std::abs(space.d(i, i)) - tol});
        for (int j = 0; j < n; ++j) {
            if (space.d(i, j) < -tol)
                report.violations.push_back({K::Negative, i, j, -1, -space.d(i, j) - tol});
            if (j > i) {
                double asym = std::abs(space.d(i, j) - space.d(j, i));
                if (asym > tol) report.violations.push_back({K::Symmetry, i, j, -1, asym - tol});
                if (space.d(i, j) > space.bound() + tol)
                    report.violations.push_back(
                        {K::Bound, i, j, -1, space.d(i, j) - space.bound() - tol});
            }
            for (int k = 0; k < n; ++k) {
                double excess = space.d(i, k) - space.d(i, j) - space.d(j, k);
                if (excess > tol)
                    report.violations.push_back({K::Triangle, i, j, k, excess - tol});
            }
        }
    }
    return report;
}

double diameter(const FiniteMetricSpace& space, const std::vector<int>& subset) {
    if (subset.empty()) throw DomainError("diameter of an empty subset");
    for (int i : subset)
        if (i < 0 || i >= space.size()) throw DomainError("subset index out of range");
    double diam = 0.0;
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            diam = std::max(diam, space.d(subset[a], subset[b]));
    return diam;
}

SeparatedSet greedy_separated_set(const FiniteMetricSpace& space, double eps, int max_k) {
    if (eps <= 0.0) throw DomainError("eps must be positive");
    SeparatedSet set;
    set.eps = eps;
    for (int p = 0; p < space.size(); ++p) {
        if (static_cast<int>(set.indices.size()) >= max_k) break;
        bool outside = true;
        for (int c : set.indices)
            if (space.d(p, c) <= eps) { outside = false; break; }
        if (outside) set.indices.push_back(p);
    }
    return set;
}

CoverCertificate covering_report(const FiniteMetricSpace& space, double eps) {
    SeparatedSet set = greedy_separated_set(space, eps);
    CoverCertificate cert;
    cert.centers = set.indices;
    cert.radius = eps;
    cert.covered = true;
    for (int p = 0; p < space.size(); ++p) {
        bool hit = false;
        for (int c : cert.centers)
            if (space.d(p, c) <= eps) { hit = true; break; }
        if (!hit) { cert.covered = false; break; }
    }
    return cert;
}

Partition build_partition(const FiniteMetricSpace& space, double delta) {
    if (delta <= 0.0) throw DomainError("delta must be positive");
    Partition part;
    if (space.size() == 0) return part;
    SeparatedSet centers = greedy_separated_set(space, delta / 2.0);
    part.reps = centers.indices;
    part.cells.assign(part.reps.size(), {});
    for (int p = 0; p < space.size(); ++p) {
        int best = 0;
        for (std::size_t c = 1; c < part.reps.size(); ++c)
            if (space.d(p, part.reps[c]) < space.d(p, part.reps[best])) best = static_cast<int>(c);
        part.cells[best].push_back(p);
    }
    for (const auto& cell : part.cells)
        part.mesh = std::max(part.mesh, diameter(space, cell));
    return part;
}

} // namespace charges
