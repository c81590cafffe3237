#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "charges/algebra.hpp"
#include "charges/limits.hpp"
#include "charges/measure.hpp"
#include "charges/transport.hpp"

namespace charges {

// Nearest-anchor rounding: the finite stand-in for the standard part map.
// Atoms farther than escape_radius from every anchor count as escaping mass.
class RoundingMap {
public:
    explicit RoundingMap(std::shared_ptr<const FiniteMetricSpace> anchors,
                         double escape_radius = std::numeric_limits<double>::infinity());

    const FiniteMetricSpace& anchors() const { return *anchors_; }
    std::shared_ptr<const FiniteMetricSpace> anchors_ptr() const { return anchors_; }
    double escape_radius() const { return escape_radius_; }

    // Lowest-index nearest anchor; -1 when the point escapes.
    int nearest(const std::vector<double>& x) const;
    double displacement(const std::vector<double>& x) const;

private:
    std::shared_ptr<const FiniteMetricSpace> anchors_;
    double escape_radius_;
};

// Limit of the per-resolution pushforwards through the rounding map.
struct ExternalPushdown {
    std::shared_ptr<const FiniteMetricSpace> anchors;
    std::vector<double> weights;         // limit mass per anchor
    std::vector<bool> flagged;           // anchors whose mass did not settle
    std::vector<double> gaps;
    std::vector<double> escaping_series; // escaping mass per resolution

    bool all_converged() const;
    double escaping_mass() const;        // at the last resolution
    DiscreteMeasure measure() const;     // throws when mass escaped or flagged
};

ExternalPushdown external_pushdown(const MeasureFamily& family, const RoundingMap& rounding,
                                   const LimitConfig& cfg);

// Per-set mass limits: the charge A -> lim_N nu_N(A).
ChargeTable internal_pushdown(const MeasureFamily& family, SetAlgebra algebra,
                              const std::vector<RealizedSet>& realizers,
                              const LimitConfig& cfg);

struct PushdownAudit {
    std::vector<int> resolutions;
    std::vector<double> w1_series;      // W1(nu_N, limit pushdown) per resolution
    std::vector<double> tv_series;
    std::vector<double> scale_series;   // max rounding displacement per resolution
    std::vector<double> escaping_series;
    double fitted_c = 0.0;
    bool infinitesimal_analog = false;  // w1 stays within a constant band of scale
};

PushdownAudit pd_wasserstein_audit(const MeasureFamily& family, const RoundingMap& rounding,
                                   const LimitConfig& cfg, const TransportTols& tols = {});

struct IpdPdEntry {
    std::string name;
    bool admitted = false;       // continuity-set analog passed
    std::string exclusion;       // why not admitted, empty otherwise
    double ipd_value = 0.0;
    double pd_value = 0.0;
    double discrepancy = 0.0;
};

struct IpdPdReport {
    std::vector<IpdPdEntry> entries;
    double max_discrepancy = 0.0;  // over admitted entries
    bool pass = false;
};

IpdPdReport ipd_vs_pd_audit(const MeasureFamily& family, const RoundingMap& rounding,
                            SetAlgebra algebra, const std::vector<RealizedSet>& realizers,
                            const LimitConfig& cfg, double boundary_tol = 1e-6);

struct LevelCell {
    double lo = 0.0, hi = 0.0;  // f-value interval
    double charge_value = 0.0;  // mass limit of the preimage
    bool flagged = false;
};

struct IntegralCheckEntry {
    double eps = 0.0;
    double internal_integral = 0.0;  // integral of f at the largest resolution
    double charge_integral = 0.0;    // simple-function integral against the charge
    double gap = 0.0;
    bool pass = false;
    std::vector<LevelCell> cells;
};

struct IntegralCheckReport {
    std::vector<IntegralCheckEntry> entries;
    bool pass = false;
};

// Level-set comparison of the internal integral with the charge integral:
// for each eps, the gap must stay within 2*eps plus the limit tolerance.
IntegralCheckReport integral_consistency_check(
    const MeasureFamily& family,
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& eps_list, const LimitConfig& cfg);

// Metric space over the union of anchor points and atom coordinates
// (exact duplicates merged), with both measures re-embedded.
struct UnionEmbedding {
    std::shared_ptr<const FiniteMetricSpace> space;
    DiscreteMeasure left;
    DiscreteMeasure right;
};

UnionEmbedding embed_union(const Atoms& left, const Atoms& right);

} // namespace charges
