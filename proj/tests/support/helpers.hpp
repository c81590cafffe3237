#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <random>
#include <vector>

#include "charges/measure.hpp"
#include "charges/metric.hpp"

namespace testsupport {

using charges::DiscreteMeasure;
using charges::FiniteMetricSpace;

inline std::shared_ptr<const FiniteMetricSpace> random_euclid_space(int n, int dim,
                                                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::vector<std::vector<double>> points(n, std::vector<double>(dim));
    for (auto& p : points)
        for (double& c : p) c = coord(rng);
    return std::make_shared<FiniteMetricSpace>(
        FiniteMetricSpace::from_points_auto_bound(points));
}

// Random symmetric matrix pushed to a metric by min-plus closure.
inline std::shared_ptr<const FiniteMetricSpace> random_matrix_space(int n,
                                                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> edge(0.1, 1.0);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = edge(rng);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    double bound = 0.0;
    for (const auto& row : d)
        for (double x : row) bound = std::max(bound, x);
    return std::make_shared<FiniteMetricSpace>(FiniteMetricSpace::from_matrix(d, bound));
}

inline DiscreteMeasure random_measure(std::shared_ptr<const FiniteMetricSpace> space,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mass(0.05, 1.0);
    std::vector<double> w(space->size());
    double total = 0.0;
    for (double& x : w) total += (x = mass(rng));
    for (double& x : w) x /= total;
    return DiscreteMeasure(std::move(space), std::move(w));
}

// Integer weights over `denom`, every point positive; exact in binary floating
// point when denom is a power of two.
inline std::vector<int> random_integer_weights(int n, int denom, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> w(n, 1);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int r = n; r < denom; ++r) w[pick(rng)] += 1;
    return w;
}

inline DiscreteMeasure measure_from_integers(std::shared_ptr<const FiniteMetricSpace> space,
                                             const std::vector<int>& w, int denom) {
    std::vector<double> weights(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        weights[i] = static_cast<double>(w[i]) / denom;
    return DiscreteMeasure(std::move(space), std::move(weights));
}

namespace detail {

inline void enumerate_flows(const std::vector<int>& supply, std::vector<int>& demand,
                            const std::vector<std::vector<double>>& cost, std::size_t row,
                            std::size_t col, int left_in_row, double acc, double& best) {
    if (acc >= best) return;
    if (row == supply.size()) {
        best = acc;
        return;
    }
    if (col == demand.size()) {
        if (left_in_row == 0)
            enumerate_flows(supply, demand, cost, row + 1, 0,
                            row + 1 < supply.size() ? supply[row + 1] : 0, acc, best);
        return;
    }
    int cap = std::min(left_in_row, demand[col]);
    for (int f = 0; f <= cap; ++f) {
        demand[col] -= f;
        enumerate_flows(supply, demand, cost, row, col + 1, left_in_row - f,
                        acc + f * cost[row][col], best);
        demand[col] += f;
    }
}

} // namespace detail

// Exact minimum over all integer transport plans; the transportation polytope
// has integral vertices for integral marginals, so this hits the LP optimum.
inline double brute_force_transport(const std::vector<int>& supply,
                                    const std::vector<int>& demand,
                                    const std::vector<std::vector<double>>& cost) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> d = demand;
    detail::enumerate_flows(supply, d, cost, 0, 0, supply.empty() ? 0 : supply[0], 0.0,
                            best);
    return best;
}

} // namespace testsupport
