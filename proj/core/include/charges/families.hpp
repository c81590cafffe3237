#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "charges/measure.hpp"

namespace charges {

// Built-in resolution-indexed families on the unit interval; these model the
// internal measures behind the library's demos and audits.

// Point mass at 1/(2N).
MeasureFamily family_point_at_half_inv();
// Point mass at 1/N.
MeasureFamily family_point_at_inv();
// Point mass at a fixed location.
MeasureFamily family_point_const(double loc);
// Uniform on the midpoint grid {(j-1/2)/N : j = 1..N} of [0,1].
MeasureFamily family_uniform_grid();
// The same atoms at every resolution.
MeasureFamily family_constant(Atoms atoms);

// Bounded Lipschitz test functions on coordinates, for weak-convergence runs.
struct BoundedLipFn {
    std::string id;
    std::function<double(const std::vector<double>&)> eval;
    double bound = 0.0;   // declared sup norm
    double lip_M = 1.0;   // declared Lipschitz constant
};

// Cone functions min_j (offset_j + |x - apex_j|) with apexes in [0,1]^dim,
// offsets in [-domain_bound, domain_bound]; 1-Lipschitz by construction.
std::vector<BoundedLipFn> cone_functions(int dim, int count, std::uint64_t seed,
                                         double domain_bound = 1.0);

} // namespace charges
