#pragma once

#include <vector>

#include "charges/measure.hpp"

namespace charges {

struct TransportTols {
    double lp = 1e-9;
    double gap = 1e-7;
};

struct TransportPlan {
    std::vector<std::vector<double>> coupling;  // source index x target index
    double cost = 0.0;
};

struct DualPotential {
    std::vector<double> f;  // 1-Lipschitz on the space, one value per point
};

// Exact minimum-cost coupling between mu and nu (transportation simplex).
TransportPlan w1_primal(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                        const FiniteMetricSpace& space,
                        const TransportTols& tols = {});

struct DualSolution {
    double value = 0.0;
    DualPotential witness;
};

// Lipschitz dual: max sum f_i (mu_i - nu_i) over |f_i - f_j| <= d_ij,
// solved as a general LP. Independent of the primal route.
DualSolution w1_dual(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const FiniteMetricSpace& space,
                     const TransportTols& tols = {});

double duality_gap(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                   const FiniteMetricSpace& space, const TransportTols& tols = {});

// Half the l1 distance between weight vectors.
double tv_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// Max integral difference over an explicit family of 1-Lipschitz functions
// given as per-point value vectors; never exceeds the dual optimum.
double lipschitz_sup_estimate(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const FiniteMetricSpace& space,
                              const std::vector<std::vector<double>>& family,
                              const TransportTols& tols = {});

} // namespace charges
