#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "charges/algebra.hpp"
#include "charges/families.hpp"
#include "charges/limits.hpp"
#include "charges/measure.hpp"
#include "charges/metric.hpp"
#include "charges/transport.hpp"

namespace charges {

struct QuantizationResult {
    DiscreteMeasure quantized;
    Partition partition;
    double certified_bound = 0.0;  // the partition mesh
};

// Move each cell's mass to its representative; W1(P, quantized) <= mesh.
QuantizationResult quantize(const DiscreteMeasure& P, const Partition& partition);

// One quantization per delta; the W1 series is dominated by the delta series.
std::vector<QuantizationResult> quantization_schedule(const DiscreteMeasure& P,
                                                      const std::vector<double>& deltas);

struct FunctionReport {
    std::string id;
    bool accepted = false;       // passed the bounded + Lipschitz gate
    std::string rejection;       // why not, empty otherwise
    std::vector<double> series;  // integral difference per resolution
    bool converged = false;
    double gap = 0.0;            // oscillation gap over the window
};

struct ConvergenceReport {
    std::vector<FunctionReport> functions;
    std::vector<double> sup_series;  // max |difference| over accepted functions
    bool converges = false;
    std::string worst_function;
};

// Weak-convergence test per the bounded-uniformly-continuous definition,
// operationalized as bounded + declared-Lipschitz; functions failing the
// gate are rejected (and still reported with their raw series).
ConvergenceReport weak_convergence_test(
    const MeasureFamily& seq,
    const std::function<double(const BoundedLipFn&)>& target_integral,
    const std::vector<BoundedLipFn>& functions, const LimitConfig& cfg,
    double tol_lp = 1e-9);

// Target integration helpers.
std::function<double(const BoundedLipFn&)> integrator_from_atoms(Atoms target);
// Level-set route for charge targets: integrate against mass limits of the
// integrand's own level sets.
std::function<double(const BoundedLipFn&)> integrator_from_family(MeasureFamily source,
                                                                  double eps,
                                                                  LimitConfig cfg);

struct PortmanteauEntry {
    std::string name;
    bool continuity = false;     // boundary clear of target mass
    std::vector<double> series;  // seq mass of the set per resolution
    double target_mass = 0.0;
    bool converged = false;
    double gap = 0.0;
};

struct PortmanteauReport {
    std::vector<PortmanteauEntry> entries;
    bool pass = false;  // every continuity set converged to the target mass
};

PortmanteauReport portmanteau_check(const MeasureFamily& seq, const Atoms& target,
                                    const std::vector<RealizedSet>& sets,
                                    double boundary_tol, const LimitConfig& cfg);

// Sparse measures on a countable discrete support Y, indexed by sequence
// position; each entry is (Y index, mass).
struct DiscreteSeq {
    std::function<std::vector<std::pair<int, double>>(int n)> at;
};

struct OscillationWitness {
    std::vector<int> indices;             // n_i, strictly increasing
    std::vector<std::vector<int>> sets;   // B_i, pairwise disjoint
    double hi = 0.75, lo = 0.25;
};

struct Exhaustion {
    int step = 0;          // round at which the search gave up
    std::string reason;
};

struct OscillationOutcome {
    std::optional<OscillationWitness> witness;
    std::optional<Exhaustion> exhaustion;
};

// Transcribes the subsequence-extraction loop: find B_i carrying mass above
// hi at step n_i while the union of earlier sets has mass below lo. Reports
// honest exhaustion instead of searching forever.
OscillationOutcome oscillation_extract(const DiscreteSeq& seq, int rounds, int budget,
                                       double hi = 0.75, double lo = 0.25);

struct UnionSetReport {
    std::vector<int> union_set;      // even-indexed B_i merged
    std::vector<double> series;      // P_{n_i}(union set)
    double oscillation_gap = 0.0;    // min over even i minus max over odd i
    bool pass = false;               // gap >= 1/2
};

UnionSetReport union_set_verdict(const OscillationWitness& witness, const DiscreteSeq& seq);

} // namespace charges
