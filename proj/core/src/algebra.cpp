#include "charges/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "charges/errors.hpp"

namespace charges {

namespace {
constexpr int kMaxAtoms = 10;  // members = 2^atoms, kept finitely checkable
}

SetAlgebra SetAlgebra::close(int universe, const std::vector<std::vector<int>>& generators) {
    if (universe < 0) throw DomainError("universe size must be nonnegative");
    for (const auto& g : generators)
        for (int i : g)
            if (i < 0 || i >= universe) throw DomainError("generator index out of range");

    // Atom signature of each element: which generators contain it.
    std::map<std::vector<bool>, std::vector<int>> atoms;
    for (int x = 0; x < universe; ++x) {
        std::vector<bool> sig(generators.size(), false);
        for (std::size_t g = 0; g < generators.size(); ++g)
            sig[g] = std::find(generators[g].begin(), generators[g].end(), x) !=
                     generators[g].end();
        atoms[sig].push_back(x);
    }
    if (static_cast<int>(atoms.size()) > kMaxAtoms)
        throw DomainError("generated algebra too large (more than 2^" +
                          std::to_string(kMaxAtoms) + " members)");

    std::vector<std::vector<int>> atom_list;
    for (auto& [sig, elems] : atoms) atom_list.push_back(elems);

    std::set<std::vector<int>> members;
    const std::size_t n_atoms = atom_list.size();
    for (std::size_t mask = 0; mask < (1ull << n_atoms); ++mask) {
        std::vector<int> m;
        for (std::size_t a = 0; a < n_atoms; ++a)
            if (mask & (1ull << a))
                m.insert(m.end(), atom_list[a].begin(), atom_list[a].end());
        std::sort(m.begin(), m.end());
        members.insert(std::move(m));
    }
    if (universe == 0) members.insert({});

    SetAlgebra alg;
    alg.universe_ = universe;
    alg.members_.assign(members.begin(), members.end());
    return alg;
}

int SetAlgebra::find(const std::vector<int>& set) const {
    std::vector<int> s = set;
    std::sort(s.begin(), s.end());
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it != members_.end() && *it == s) return static_cast<int>(it - members_.begin());
    return -1;
}

std::vector<int> SetAlgebra::complement(int member) const {
    const auto& m = members_[member];
    std::vector<int> c;
    std::size_t k = 0;
    for (int x = 0; x < universe_; ++x) {
        if (k < m.size() && m[k] == x) { ++k; continue; }
        c.push_back(x);
    }
    return c;
}

std::vector<int> SetAlgebra::set_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}

bool SetAlgebra::disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> i;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(i));
    return i.empty();
}

bool SetAlgebra::subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

double ChargeTable::value_of(const std::vector<int>& set) const {
    int m = algebra.find(set);
    if (m < 0) throw DomainError("set is not a member of the algebra");
    return values[m];
}

void ChargeTable::validate(double tol) const {
    const int n = algebra.member_count();
    int empty = algebra.find({});
    std::vector<int> full(algebra.universe());
    for (int i = 0; i < algebra.universe(); ++i) full[i] = i;
    int univ = algebra.find(full);
    if (!oscillating[empty] && std::abs(values[empty]) > tol)
        throw DomainError("charge invariant: value of the empty set must be 0");
    if (!oscillating[univ] && std::abs(values[univ] - 1.0) > tol)
        throw DomainError("charge invariant: value of the universe must be 1");
    for (int a = 0; a < n; ++a) {
        if (oscillating[a]) continue;
        if (values[a] < -tol || values[a] > 1.0 + tol)
            throw DomainError("charge invariant: values must lie in [0,1]");
        for (int b = a + 1; b < n; ++b) {
            if (oscillating[b]) continue;
            if (!SetAlgebra::disjoint(algebra.members()[a], algebra.members()[b])) continue;
            int u = algebra.find(
                SetAlgebra::set_union(algebra.members()[a], algebra.members()[b]));
            if (u < 0 || oscillating[u]) continue;
            if (std::abs(values[u] - values[a] - values[b]) > tol)
                throw DomainError("charge invariant: finite additivity failed");
        }
    }
}

ChargeTable charge_from_values(SetAlgebra algebra, std::vector<double> values, double tol) {
    if (static_cast<int>(values.size()) != algebra.member_count())
        throw StructuralError("one value per algebra member required");
    ChargeTable table;
    table.algebra = std::move(algebra);
    table.values = std::move(values);
    table.oscillating.assign(table.values.size(), false);
    table.gaps.assign(table.values.size(), 0.0);
    table.validate(tol);
    return table;
}

RealizedSet interval_set(const std::string& name, double lo, double hi, bool closed_lo) {
    RealizedSet set;
    set.name = name;
    set.select = [lo, hi, closed_lo](int, const Atoms& atoms) {
        std::vector<int> idx;
        for (int i = 0; i < atoms.size(); ++i) {
            double x = atoms.coords[i].at(0);
            bool in = (closed_lo ? x >= lo : x > lo) && x <= hi;
            if (in) idx.push_back(i);
        }
        return idx;
    };
    set.boundary = {{lo}, {hi}};
    return set;
}

ChargeTable charge_from_limits(const MeasureFamily& family, SetAlgebra algebra,
                               const std::vector<RealizedSet>& realizers,
                               const LimitConfig& cfg) {
    if (static_cast<int>(realizers.size()) != algebra.member_count())
        throw StructuralError("one realizer per algebra member required");
    if (cfg.schedule.empty()) throw DomainError("empty resolution schedule");

    const int m = algebra.member_count();
    std::vector<std::vector<double>> series(m);
    for (int n : cfg.schedule) {
        Atoms atoms = family.at(n);
        for (int k = 0; k < m; ++k)
            series[k].push_back(atoms.mass_of(realizers[k].select(n, atoms)));
    }

    ChargeTable table;
    table.algebra = std::move(algebra);
    table.values.resize(m);
    table.oscillating.resize(m);
    table.gaps.resize(m);
    for (int k = 0; k < m; ++k) {
        LimitResult r = detect_limit(series[k], cfg);
        table.values[k] = r.value;
        table.oscillating[k] = !r.converged;
        table.gaps[k] = r.gap;
    }
    table.validate(std::max(kTolMass, cfg.tol));
    return table;
}

WitnessReport ca_failure_witness(const ChargeTable& charge,
                                 const std::vector<std::vector<int>>& chain,
                                 const std::vector<int>& limit_set,
                                 double gap_threshold) {
    if (chain.empty()) throw DomainError("empty chain");
    std::vector<std::vector<int>> sorted;
    for (const auto& link : chain) {
        auto s = link;
        std::sort(s.begin(), s.end());
        sorted.push_back(std::move(s));
    }
    std::vector<int> limit = limit_set;
    std::sort(limit.begin(), limit.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (!SetAlgebra::subset_of(sorted[i - 1], sorted[i]))
            throw DomainError("chain is not increasing under inclusion");
    for (const auto& link : sorted)
        if (!SetAlgebra::subset_of(link, limit))
            throw DomainError("chain element is not contained in the limit set");

    WitnessReport report;
    report.limit_value = charge.value_of(limit);
    report.chain_sup = charge.value_of(sorted.front());
    for (const auto& link : sorted)
        report.chain_sup = std::max(report.chain_sup, charge.value_of(link));
    report.gap = report.limit_value - report.chain_sup;
    report.witness = report.gap >= gap_threshold;
    return report;
}

} // namespace charges
