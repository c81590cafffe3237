#pragma once

#include <cstdint>
#include <vector>

#include "charges/metric.hpp"

namespace charges {

// Function values prescribed on an anchor set together with the Lipschitz
// constant the extension must respect.
struct AnchoredFunction {
    std::vector<int> anchors;
    std::vector<double> values;
    double M = 1.0;
};

// Throws unless |values[a]-values[b]| <= M * d(a,b) for all anchor pairs.
void check_anchored(const AnchoredFunction& f, const FiniteMetricSpace& space,
                    double tol = 1e-12);

// Inf-formula extension: min over anchors of value + M * d(x, anchor).
// Agrees with the prescribed values on anchors and is M-Lipschitz everywhere.
double mcshane_extend(const AnchoredFunction& f, const FiniteMetricSpace& space, int x);
std::vector<double> mcshane_extend_all(const AnchoredFunction& f,
                                       const FiniteMetricSpace& space);

struct LipschitzCheck {
    bool ok = true;
    int worst_i = -1, worst_j = -1;
    double worst_excess = 0.0;  // |g_i - g_j| - M d_ij at the worst pair
};

LipschitzCheck verify_lipschitz(const std::vector<double>& g,
                                const FiniteMetricSpace& space, double M,
                                double tol = 1e-12);

// Deterministic pseudo-random 1-Lipschitz functions of the form
// min_j (offset_j + d(x, apex_j)), offsets bounded by the space diameter.
std::vector<std::vector<double>> cone_family(const FiniteMetricSpace& space, int count,
                                             std::uint64_t seed);

// Indicator of B on an eps-separated anchor set Y, with M = 1/eps; its
// McShane extension realizes the indicator on all of the space.
AnchoredFunction separated_indicator(const SeparatedSet& Y, const std::vector<int>& B);

} // namespace charges
