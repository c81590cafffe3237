#pragma once

#include <functional>
#include <string>
#include <vector>

#include "charges/limits.hpp"
#include "charges/measure.hpp"

namespace charges {

// Finite algebra of subsets of {0,..,universe-1}: contains the empty set and
// the universe, closed under complement and pairwise union. Members are stored
// as sorted index lists in a canonical order.
class SetAlgebra {
public:
    static SetAlgebra close(int universe, const std::vector<std::vector<int>>& generators);

    int universe() const { return universe_; }
    const std::vector<std::vector<int>>& members() const { return members_; }
    int member_count() const { return static_cast<int>(members_.size()); }

    // Index of a member set, or -1 when the set is not in the algebra.
    int find(const std::vector<int>& set) const;
    std::vector<int> complement(int member) const;
    static std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b);
    static bool disjoint(const std::vector<int>& a, const std::vector<int>& b);
    static bool subset_of(const std::vector<int>& a, const std::vector<int>& b);

private:
    int universe_ = 0;
    std::vector<std::vector<int>> members_;
};

// Finitely additive [0,1]-valued set function on a finite algebra. Members
// whose defining limit failed to settle are flagged and excluded from the
// additivity check.
struct ChargeTable {
    SetAlgebra algebra;
    std::vector<double> values;        // one per algebra member
    std::vector<bool> oscillating;     // limit flag per member
    std::vector<double> gaps;          // max-min over the window when flagged

    double value_of(const std::vector<int>& set) const;
    bool flagged(int member) const { return oscillating[member]; }
    // Throws DomainError when finite additivity fails beyond tol on
    // unflagged members, or boundary values are off.
    void validate(double tol = kTolMass) const;
};

ChargeTable charge_from_values(SetAlgebra algebra, std::vector<double> values,
                               double tol = kTolMass);

// A test set together with its per-resolution realization inside a family's
// atom list, plus the boundary points used by continuity-set classification.
struct RealizedSet {
    std::string name;
    std::function<std::vector<int>(int n, const Atoms&)> select;
    std::vector<std::vector<double>> boundary;
};

// Realize an interval (lo, hi] (or [lo, hi] when closed_lo) on a 1-d family.
RealizedSet interval_set(const std::string& name, double lo, double hi,
                         bool closed_lo = false);

// Per-member mass limits along the resolution schedule. Non-convergent
// members are flagged, not guessed.
ChargeTable charge_from_limits(const MeasureFamily& family, SetAlgebra algebra,
                               const std::vector<RealizedSet>& realizers,
                               const LimitConfig& cfg);

struct WitnessReport {
    bool witness = false;
    double gap = 0.0;           // value(limit set) - sup over the chain
    double chain_sup = 0.0;
    double limit_value = 0.0;
};

// Certifies failure of countable additivity: the chain's values stay far
// below the value of the declared limit member. The limit member is passed
// explicitly because a finite chain's literal union cannot model a countable
// one.
WitnessReport ca_failure_witness(const ChargeTable& charge,
                                 const std::vector<std::vector<int>>& chain,
                                 const std::vector<int>& limit_set,
                                 double gap_threshold = 0.5);

} // namespace charges
