#include "charges/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "charges/errors.hpp"

namespace charges {

QuantizationResult quantize(const DiscreteMeasure& P, const Partition& partition) {
    std::vector<double> weights(P.size(), 0.0);
    std::vector<bool> seen(P.size(), false);
    for (std::size_t k = 0; k < partition.cells.size(); ++k) {
        int rep = partition.reps[k];
        if (rep < 0 || rep >= P.size()) throw DomainError("representative out of range");
        for (int i : partition.cells[k]) {
            if (i < 0 || i >= P.size() || seen[i])
                throw DomainError("cells must partition the point set");
            seen[i] = true;
            weights[rep] += P.weight(i);
        }
    }
    for (bool s : seen)
        if (!s) throw DomainError("cells must cover every point");
    return {DiscreteMeasure(P.space_ptr(), std::move(weights)), partition, partition.mesh};
}

std::vector<QuantizationResult> quantization_schedule(const DiscreteMeasure& P,
                                                      const std::vector<double>& deltas) {
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (!(deltas[i] < deltas[i - 1]))
            throw DomainError("deltas must be strictly decreasing");
    std::vector<QuantizationResult> results;
    results.reserve(deltas.size());
    for (double delta : deltas)
        results.push_back(quantize(P, build_partition(P.space(), delta)));
    return results;
}

ConvergenceReport weak_convergence_test(
    const MeasureFamily& seq,
    const std::function<double(const BoundedLipFn&)>& target_integral,
    const std::vector<BoundedLipFn>& functions, const LimitConfig& cfg, double tol_lp) {
    if (functions.empty()) throw DomainError("empty function family");
    if (cfg.schedule.empty()) throw DomainError("empty resolution schedule");

    std::vector<Atoms> snapshots;
    for (int n : cfg.schedule) snapshots.push_back(seq.at(n));

    // Evaluation points for the bounded + Lipschitz gate.
    std::set<std::vector<double>> point_set;
    for (const Atoms& atoms : snapshots)
        for (int i = 0; i < atoms.size(); ++i)
            if (atoms.weights[i] > 0.0) point_set.insert(atoms.coords[i]);
    std::vector<std::vector<double>> points(point_set.begin(), point_set.end());
    if (points.size() > 1500) {  // keep the pair scan tractable
        std::vector<std::vector<double>> sampled;
        std::size_t stride = points.size() / 1500 + 1;
        for (std::size_t i = 0; i < points.size(); i += stride) sampled.push_back(points[i]);
        points.swap(sampled);
    }

    ConvergenceReport report;
    std::vector<std::size_t> accepted;
    for (const BoundedLipFn& fn : functions) {
        FunctionReport fr;
        fr.id = fn.id;
        fr.accepted = true;
        std::vector<double> values(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            values[i] = fn.eval(points[i]);
            if (!std::isfinite(values[i]) || std::abs(values[i]) > fn.bound + tol_lp) {
                fr.accepted = false;
                fr.rejection = "exceeds declared bound";
                break;
            }
        }
        if (fr.accepted) {
            for (std::size_t i = 0; i < points.size() && fr.accepted; ++i)
                for (std::size_t j = i + 1; j < points.size(); ++j) {
                    double d = euclidean(points[i], points[j]);
                    if (std::abs(values[i] - values[j]) > fn.lip_M * d + tol_lp) {
                        fr.accepted = false;
                        fr.rejection = "violates declared Lipschitz constant";
                        break;
                    }
                }
        }
        double target = fr.accepted ? target_integral(fn) : 0.0;
        for (const Atoms& atoms : snapshots)
            fr.series.push_back(atoms.integrate(fn.eval) - target);
        LimitResult lr = detect_limit_to(fr.series, 0.0, cfg);
        fr.converged = fr.accepted && lr.converged;
        fr.gap = lr.gap;
        if (fr.accepted) accepted.push_back(report.functions.size());
        report.functions.push_back(std::move(fr));
    }

    report.sup_series.assign(snapshots.size(), 0.0);
    double worst = -1.0;
    for (std::size_t idx : accepted) {
        const FunctionReport& fr = report.functions[idx];
        for (std::size_t t = 0; t < fr.series.size(); ++t)
            report.sup_series[t] = std::max(report.sup_series[t], std::abs(fr.series[t]));
        if (std::abs(fr.series.back()) > worst) {
            worst = std::abs(fr.series.back());
            report.worst_function = fr.id;
        }
    }
    report.converges =
        !accepted.empty() && detect_limit_to(report.sup_series, 0.0, cfg).converged;
    return report;
}

std::function<double(const BoundedLipFn&)> integrator_from_atoms(Atoms target) {
    return [target = std::move(target)](const BoundedLipFn& fn) {
        return target.integrate(fn.eval);
    };
}

std::function<double(const BoundedLipFn&)> integrator_from_family(MeasureFamily source,
                                                                  double eps,
                                                                  LimitConfig cfg) {
    if (eps <= 0.0) throw DomainError("eps must be positive");
    return [source = std::move(source), eps, cfg = std::move(cfg)](const BoundedLipFn& fn) {
        std::vector<Atoms> snapshots;
        for (int n : cfg.schedule) snapshots.push_back(source.at(n));
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (const Atoms& atoms : snapshots)
            for (int i = 0; i < atoms.size(); ++i) {
                double v = fn.eval(atoms.coords[i]);
                if (!std::isfinite(v)) throw DomainError("integrand unbounded on the charge source");
                if (first || v < lo) lo = v;
                if (first || v > hi) hi = v;
                first = false;
            }
        if (first) throw DomainError("charge source has no atoms");
        int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / eps)));
        double integral = 0.0;
        for (int c = 0; c < cells; ++c) {
            double clo = lo + c * eps;
            double chi = (c == cells - 1) ? hi : clo + eps;
            std::vector<double> series;
            for (const Atoms& atoms : snapshots) {
                double mass = 0.0;
                for (int i = 0; i < atoms.size(); ++i) {
                    double v = fn.eval(atoms.coords[i]);
                    bool in = (c == cells - 1) ? v >= clo : (v >= clo && v < clo + eps);
                    if (in) mass += atoms.weights[i];
                }
                series.push_back(mass);
            }
            integral += 0.5 * (clo + chi) * detect_limit(series, cfg).value;
        }
        return integral;
    };
}

PortmanteauReport portmanteau_check(const MeasureFamily& seq, const Atoms& target,
                                    const std::vector<RealizedSet>& sets,
                                    double boundary_tol, const LimitConfig& cfg) {
    if (cfg.schedule.empty()) throw DomainError("empty resolution schedule");
    std::vector<Atoms> snapshots;
    for (int n : cfg.schedule) snapshots.push_back(seq.at(n));

    PortmanteauReport report;
    report.pass = true;
    for (const RealizedSet& set : sets) {
        PortmanteauEntry entry;
        entry.name = set.name;
        entry.continuity = true;
        for (const auto& b : set.boundary) {
            for (int i = 0; i < target.size() && entry.continuity; ++i)
                if (target.weights[i] > 0.0 && euclidean(target.coords[i], b) <= boundary_tol)
                    entry.continuity = false;
            if (!entry.continuity) break;
        }
        entry.target_mass = target.mass_of(set.select(0, target));
        for (std::size_t t = 0; t < snapshots.size(); ++t)
            entry.series.push_back(
                snapshots[t].mass_of(set.select(cfg.schedule[t], snapshots[t])));
        if (entry.continuity) {
            LimitResult lr = detect_limit_to(entry.series, entry.target_mass, cfg);
            entry.converged = lr.converged;
            entry.gap = lr.gap;
            report.pass = report.pass && entry.converged;
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

namespace {

double seq_mass(const std::vector<std::pair<int, double>>& entries,
                const std::vector<int>& set) {
    double mass = 0.0;
    for (const auto& [y, w] : entries)
        if (std::find(set.begin(), set.end(), y) != set.end()) mass += w;
    return mass;
}

// Smallest-cardinality greedy set above the threshold: largest masses first,
// lowest Y index on ties, skipping excluded indices.
std::optional<std::vector<int>> pick_heavy_set(
    const std::vector<std::pair<int, double>>& entries, const std::vector<int>& excluded,
    double threshold) {
    std::vector<std::pair<int, double>> usable;
    for (const auto& e : entries) {
        if (e.second < 0.0) throw DomainError("negative mass in sequence member");
        if (std::find(excluded.begin(), excluded.end(), e.first) == excluded.end())
            usable.push_back(e);
    }
    std::sort(usable.begin(), usable.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<int> set;
    double mass = 0.0;
    for (const auto& [y, w] : usable) {
        set.push_back(y);
        mass += w;
        if (mass > threshold) {
            std::sort(set.begin(), set.end());
            return set;
        }
    }
    return std::nullopt;
}

} // namespace

OscillationOutcome oscillation_extract(const DiscreteSeq& seq, int rounds, int budget,
                                       double hi, double lo) {
    if (rounds < 1) throw DomainError("at least one round required");
    if (budget < rounds) budget = 10 * rounds;

    OscillationOutcome outcome;
    OscillationWitness witness;
    witness.hi = hi;
    witness.lo = lo;

    auto p1 = seq.at(1);
    auto b1 = pick_heavy_set(p1, {}, hi);
    if (!b1) {
        outcome.exhaustion = Exhaustion{1, "no finite set carries mass above the threshold"};
        return outcome;
    }
    witness.indices.push_back(1);
    witness.sets.push_back(*b1);

    std::vector<int> used = *b1;
    for (int i = 2; i <= rounds; ++i) {
        bool found = false;
        for (int n = witness.indices.back() + 1; n <= budget; ++n) {
            auto pn = seq.at(n);
            if (!(seq_mass(pn, used) < lo)) continue;
            auto bi = pick_heavy_set(pn, used, hi);
            if (!bi) continue;
            witness.indices.push_back(n);
            witness.sets.push_back(*bi);
            for (int y : *bi) used.push_back(y);
            std::sort(used.begin(), used.end());
            found = true;
            break;
        }
        if (!found) {
            outcome.exhaustion =
                Exhaustion{i, "budget exhausted before the union mass dropped below " +
                                  std::to_string(lo)};
            return outcome;
        }
    }

    // Re-verify the three invariants before handing the witness out.
    std::vector<int> accum;
    for (std::size_t i = 0; i < witness.sets.size(); ++i) {
        auto pn = seq.at(witness.indices[i]);
        if (!(seq_mass(pn, witness.sets[i]) > hi))
            throw SolverError("extracted set fails its mass threshold");
        if (i > 0) {
            if (!SetAlgebra::disjoint(witness.sets[i], accum))
                throw SolverError("extracted sets are not disjoint");
            if (!(seq_mass(pn, accum) < lo))
                throw SolverError("union mass is not below the threshold");
        }
        accum = SetAlgebra::set_union(accum, witness.sets[i]);
    }
    outcome.witness = std::move(witness);
    return outcome;
}

UnionSetReport union_set_verdict(const OscillationWitness& witness, const DiscreteSeq& seq) {
    const int rounds = static_cast<int>(witness.indices.size());
    if (rounds < 4) throw DomainError("union-set verdict needs at least four rounds");

    UnionSetReport report;
    for (int i = 1; i < rounds; i += 2)  // 0-based odd positions = even-numbered B_i
        report.union_set = SetAlgebra::set_union(report.union_set, witness.sets[i]);

    double even_min = 1.0, odd_max = 0.0;
    for (int i = 0; i < rounds; ++i) {
        double mass = seq_mass(seq.at(witness.indices[i]), report.union_set);
        report.series.push_back(mass);
        if (i % 2 == 1) even_min = std::min(even_min, mass);
        else odd_max = std::max(odd_max, mass);
    }
    report.oscillation_gap = even_min - odd_max;
    report.pass = report.oscillation_gap >= 0.5;
    return report;
}

} // namespace charges
