#include "charges/pushdown.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "charges/errors.hpp"

namespace charges {

RoundingMap::RoundingMap(std::shared_ptr<const FiniteMetricSpace> anchors,
                         double escape_radius)
    : anchors_(std::move(anchors)), escape_radius_(escape_radius) {
    if (!anchors_ || anchors_->size() == 0) throw DomainError("empty anchor set");
    if (!anchors_->has_points()) throw DomainError("anchors need coordinates");
}

int RoundingMap::nearest(const std::vector<double>& x) const {
    int best = 0;
    double bd = euclidean(x, anchors_->point(0));
    for (int a = 1; a < anchors_->size(); ++a) {
        double d = euclidean(x, anchors_->point(a));
        if (d < bd) { best = a; bd = d; }
    }
    if (bd > escape_radius_) return -1;
    return best;
}

double RoundingMap::displacement(const std::vector<double>& x) const {
    double bd = euclidean(x, anchors_->point(0));
    for (int a = 1; a < anchors_->size(); ++a)
        bd = std::min(bd, euclidean(x, anchors_->point(a)));
    return bd;
}

namespace {

struct Pushforward {
    std::vector<double> anchor_mass;
    double scale = 0.0;     // max displacement among rounded atoms
    double escaping = 0.0;
};

Pushforward push_through(const Atoms& atoms, const RoundingMap& rounding) {
    Pushforward pf;
    pf.anchor_mass.assign(rounding.anchors().size(), 0.0);
    for (int i = 0; i < atoms.size(); ++i) {
        if (atoms.weights[i] == 0.0) continue;
        int a = rounding.nearest(atoms.coords[i]);
        if (a < 0) {
            pf.escaping += atoms.weights[i];
            continue;
        }
        pf.anchor_mass[a] += atoms.weights[i];
        pf.scale = std::max(pf.scale, euclidean(atoms.coords[i], rounding.anchors().point(a)));
    }
    return pf;
}

} // namespace

bool ExternalPushdown::all_converged() const {
    return std::none_of(flagged.begin(), flagged.end(), [](bool f) { return f; });
}

double ExternalPushdown::escaping_mass() const {
    return escaping_series.empty() ? 0.0 : escaping_series.back();
}

DiscreteMeasure ExternalPushdown::measure() const {
    if (!all_converged())
        throw DomainError("pushdown has non-convergent anchor masses");
    if (escaping_mass() > kTolMass)
        throw DomainError("pushdown lost escaping mass");
    return DiscreteMeasure(anchors, weights);
}

ExternalPushdown external_pushdown(const MeasureFamily& family, const RoundingMap& rounding,
                                   const LimitConfig& cfg) {
    if (cfg.schedule.empty()) throw DomainError("empty resolution schedule");
    const int na = rounding.anchors().size();
    std::vector<std::vector<double>> series(na);
    ExternalPushdown pd;
    pd.anchors = rounding.anchors_ptr();
    for (int n : cfg.schedule) {
        Pushforward pf = push_through(family.at(n), rounding);
        for (int a = 0; a < na; ++a) series[a].push_back(pf.anchor_mass[a]);
        pd.escaping_series.push_back(pf.escaping);
    }
    pd.weights.resize(na);
    pd.flagged.resize(na);
    pd.gaps.resize(na);
    for (int a = 0; a < na; ++a) {
        LimitResult r = detect_limit(series[a], cfg);
        pd.weights[a] = r.value;
        pd.flagged[a] = !r.converged;
        pd.gaps[a] = r.gap;
    }
    return pd;
}

ChargeTable internal_pushdown(const MeasureFamily& family, SetAlgebra algebra,
                              const std::vector<RealizedSet>& realizers,
                              const LimitConfig& cfg) {
    return charge_from_limits(family, std::move(algebra), realizers, cfg);
}

UnionEmbedding embed_union(const Atoms& left, const Atoms& right) {
    std::map<std::vector<double>, int> index;
    std::vector<std::vector<double>> points;
    auto place = [&](const std::vector<double>& x) {
        auto [it, fresh] = index.try_emplace(x, static_cast<int>(points.size()));
        if (fresh) points.push_back(x);
        return it->second;
    };
    std::vector<int> lidx(left.size()), ridx(right.size());
    for (int i = 0; i < left.size(); ++i) lidx[i] = place(left.coords[i]);
    for (int i = 0; i < right.size(); ++i) ridx[i] = place(right.coords[i]);

    auto space = std::make_shared<FiniteMetricSpace>(
        FiniteMetricSpace::from_points_auto_bound(points));
    std::vector<double> lw(points.size(), 0.0), rw(points.size(), 0.0);
    for (int i = 0; i < left.size(); ++i) lw[lidx[i]] += left.weights[i];
    for (int i = 0; i < right.size(); ++i) rw[ridx[i]] += right.weights[i];
    return {space, DiscreteMeasure(space, std::move(lw)), DiscreteMeasure(space, std::move(rw))};
}

PushdownAudit pd_wasserstein_audit(const MeasureFamily& family, const RoundingMap& rounding,
                                   const LimitConfig& cfg, const TransportTols& tols) {
    ExternalPushdown pd = external_pushdown(family, rounding, cfg);
    if (!pd.all_converged())
        throw DomainError("external pushdown did not converge; audit would be meaningless");

    Atoms pd_atoms{rounding.anchors().points(), pd.weights};
    PushdownAudit audit;
    audit.resolutions = cfg.schedule;
    audit.escaping_series = pd.escaping_series;
    for (int n : cfg.schedule) {
        Atoms atoms = family.at(n);
        double scale = 0.0;
        for (int i = 0; i < atoms.size(); ++i)
            if (atoms.weights[i] > 0.0)
                scale = std::max(scale, rounding.displacement(atoms.coords[i]));
        audit.scale_series.push_back(scale);
        UnionEmbedding emb = embed_union(atoms, pd_atoms);
        audit.w1_series.push_back(w1_primal(emb.left, emb.right, *emb.space, tols).cost);
        audit.tv_series.push_back(tv_distance(emb.left, emb.right));
    }

    // Verdict: over the tail half of the schedule, w1 must track scale within
    // a constant band (the finite analog of "W is infinitesimal").
    std::size_t half = audit.w1_series.size() / 2;
    bool all_zero = true, ok = true;
    std::vector<double> ratios;
    for (std::size_t i = half; i < audit.w1_series.size(); ++i) {
        if (audit.w1_series[i] > 1e-12) all_zero = false;
    }
    if (all_zero) {
        audit.fitted_c = 0.0;
        audit.infinitesimal_analog = true;
        return audit;
    }
    double log_sum = 0.0;
    for (std::size_t i = half; i < audit.w1_series.size(); ++i) {
        if (audit.w1_series[i] <= 1e-12) continue;
        if (audit.scale_series[i] <= 0.0) { ok = false; break; }
        ratios.push_back(audit.w1_series[i] / audit.scale_series[i]);
        log_sum += std::log(ratios.back());
    }
    if (ok && !ratios.empty()) {
        audit.fitted_c = std::exp(log_sum / static_cast<double>(ratios.size()));
        for (double r : ratios)
            if (r > 2.0 * audit.fitted_c * (1.0 + 1e-9)) { ok = false; break; }
    }
    audit.infinitesimal_analog = ok && !ratios.empty();
    return audit;
}

IpdPdReport ipd_vs_pd_audit(const MeasureFamily& family, const RoundingMap& rounding,
                            SetAlgebra algebra, const std::vector<RealizedSet>& realizers,
                            const LimitConfig& cfg, double boundary_tol) {
    ExternalPushdown pd = external_pushdown(family, rounding, cfg);
    if (!pd.all_converged())
        throw DomainError("external pushdown did not converge");
    ChargeTable ipd = internal_pushdown(family, algebra, realizers, cfg);
    Atoms pd_atoms{rounding.anchors().points(), pd.weights};

    // Atom trajectory: every positive-mass location over the schedule.
    std::vector<std::vector<double>> trajectory = rounding.anchors().points();
    for (int n : cfg.schedule) {
        Atoms atoms = family.at(n);
        for (int i = 0; i < atoms.size(); ++i)
            if (atoms.weights[i] > 0.0) trajectory.push_back(atoms.coords[i]);
    }

    IpdPdReport report;
    for (std::size_t k = 0; k < realizers.size(); ++k) {
        IpdPdEntry entry;
        entry.name = realizers[k].name;
        if (ipd.flagged(static_cast<int>(k))) {
            entry.exclusion = "mass limit did not settle";
            report.entries.push_back(entry);
            continue;
        }
        bool boundary_hit = false;
        for (const auto& b : realizers[k].boundary) {
            for (const auto& x : trajectory)
                if (euclidean(x, b) <= boundary_tol) { boundary_hit = true; break; }
            if (boundary_hit) break;
        }
        if (boundary_hit) {
            entry.exclusion = "boundary meets an anchor or the atom trajectory";
            report.entries.push_back(entry);
            continue;
        }
        entry.admitted = true;
        entry.ipd_value = ipd.values[k];
        entry.pd_value = pd_atoms.mass_of(realizers[k].select(0, pd_atoms));
        entry.discrepancy = std::abs(entry.ipd_value - entry.pd_value);
        report.max_discrepancy = std::max(report.max_discrepancy, entry.discrepancy);
        report.entries.push_back(entry);
    }
    report.pass = report.max_discrepancy <= cfg.tol;
    return report;
}

IntegralCheckReport integral_consistency_check(
    const MeasureFamily& family,
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& eps_list, const LimitConfig& cfg) {
    if (cfg.schedule.empty()) throw DomainError("empty resolution schedule");

    // Range of f over every atom in the schedule; also rejects unbounded samples.
    double lo = 0.0, hi = 0.0;
    bool first = true;
    std::vector<Atoms> snapshots;
    for (int n : cfg.schedule) {
        snapshots.push_back(family.at(n));
        const Atoms& atoms = snapshots.back();
        for (int i = 0; i < atoms.size(); ++i) {
            double v = f(atoms.coords[i]);
            if (!std::isfinite(v)) throw DomainError("integrand is unbounded on the family");
            if (first || v < lo) lo = v;
            if (first || v > hi) hi = v;
            first = false;
        }
    }
    if (first) throw DomainError("family has no atoms");

    IntegralCheckReport report;
    report.pass = true;
    const Atoms& finest = snapshots.back();
    for (double eps : eps_list) {
        if (eps <= 0.0) throw DomainError("eps must be positive");
        IntegralCheckEntry entry;
        entry.eps = eps;
        entry.internal_integral = finest.integrate(f);

        int cells = std::max(1, static_cast<int>(std::ceil((hi - lo) / eps)));
        for (int c = 0; c < cells; ++c) {
            LevelCell cell;
            cell.lo = lo + c * eps;
            cell.hi = (c == cells - 1) ? hi : lo + (c + 1) * eps;
            std::vector<double> series;
            for (const Atoms& atoms : snapshots) {
                double mass = 0.0;
                for (int i = 0; i < atoms.size(); ++i) {
                    double v = f(atoms.coords[i]);
                    bool in = (c == cells - 1) ? (v >= cell.lo) : (v >= cell.lo && v < cell.lo + eps);
                    if (in) mass += atoms.weights[i];
                }
                series.push_back(mass);
            }
            LimitResult r = detect_limit(series, cfg);
            cell.charge_value = r.value;
            cell.flagged = !r.converged;
            entry.charge_integral += 0.5 * (cell.lo + cell.hi) * cell.charge_value;
            entry.cells.push_back(cell);
        }
        entry.gap = std::abs(entry.internal_integral - entry.charge_integral);
        entry.pass = entry.gap <= 2.0 * eps + cfg.tol;
        report.pass = report.pass && entry.pass;
        report.entries.push_back(entry);
    }
    return report;
}

} // namespace charges
