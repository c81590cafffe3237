#include <doctest.h>

#include <cmath>

#include "charges/convergence.hpp"
#include "charges/errors.hpp"
#include "charges/lipschitz.hpp"
#include "charges/transport.hpp"
#include "support/helpers.hpp"

using namespace charges;

namespace {

Atoms atoms_of(const DiscreteMeasure& m) {
    return {m.space().points(), m.weights()};
}

DiscreteSeq alternating_seq(int k) {
    return {[k](int n) {
        return std::vector<std::pair<int, double>>{{(n - 1) % k, 1.0}};
    }};
}

DiscreteSeq moving_seq() {
    return {[](int n) {
        return std::vector<std::pair<int, double>>{{n - 1, 1.0}};
    }};
}

} // namespace

TEST_CASE("quantization moves cell mass to representatives") {
    auto s = std::make_shared<FiniteMetricSpace>(
        FiniteMetricSpace::from_points({{0.0}, {0.1}, {1.0}}, 1.0));
    DiscreteMeasure P(s, {0.25, 0.25, 0.5});
    Partition part = build_partition(*s, 0.4);
    QuantizationResult q = quantize(P, part);
    CHECK(q.quantized.weight(0) == doctest::Approx(0.5));
    CHECK(q.quantized.weight(1) == 0.0);
    CHECK(q.quantized.weight(2) == doctest::Approx(0.5));
    CHECK(q.certified_bound == part.mesh);

    Partition broken = part;
    broken.cells[0].clear();
    CHECK_THROWS_AS(quantize(P, broken), DomainError);
}

TEST_CASE("quantization error stays under the mesh") {
    for (int t = 0; t < 10; ++t) {
        auto s = testsupport::random_euclid_space(25, 2, 1800 + t);
        DiscreteMeasure P = testsupport::random_measure(s, 1900 + t);
        for (double delta : {0.5, 0.25, 0.125}) {
            QuantizationResult q = quantize(P, build_partition(*s, delta));
            double w1 = w1_primal(P, q.quantized, *s).cost;
            CHECK(w1 <= q.certified_bound + 1e-12);
            CHECK(q.certified_bound <= delta);

            // integral gap bound for 1-Lipschitz functions
            for (const auto& f : cone_family(*s, 10, 2000 + t))
                CHECK(std::abs(integrate(P, f) - integrate(q.quantized, f)) <=
                      q.certified_bound + 1e-12);
        }
    }
}

TEST_CASE("quantization schedules demand decreasing deltas") {
    auto s = testsupport::random_euclid_space(10, 2, 2100);
    DiscreteMeasure P = testsupport::random_measure(s, 2101);
    auto results = quantization_schedule(P, {0.5, 0.25});
    CHECK(results.size() == 2);
    CHECK_THROWS_AS(quantization_schedule(P, {0.25, 0.5}), DomainError);
}

TEST_CASE("weak convergence of the shrinking point mass") {
    LimitConfig cfg = LimitConfig::doubling(1, 16384);
    cfg.window = 4;
    auto target = integrator_from_atoms(Atoms{{{0.0}}, {1.0}});
    auto fns = cone_functions(1, 20, 11);
    ConvergenceReport report =
        weak_convergence_test(family_point_at_inv(), target, fns, cfg);
    CHECK(report.converges);
    for (const auto& fr : report.functions) {
        CHECK(fr.accepted);
        CHECK(fr.converged);
    }
    CHECK_FALSE(report.sup_series.empty());
    CHECK(report.sup_series.back() <= 1e-3);
}

TEST_CASE("the gate rejects functions that break their declared constants") {
    LimitConfig cfg = LimitConfig::doubling();
    auto target = integrator_from_atoms(Atoms{{{0.0}}, {1.0}});

    BoundedLipFn osc;
    osc.id = "sin_inv";
    osc.bound = 1.0;
    osc.lip_M = 1.0;
    osc.eval = [](const std::vector<double>& x) { return std::sin(1.0 / x[0]); };
    BoundedLipFn tame;
    tame.id = "dist0";
    tame.bound = 2.0;
    tame.lip_M = 1.0;
    tame.eval = [](const std::vector<double>& x) { return std::abs(x[0]); };
    BoundedLipFn loud;
    loud.id = "too_big";
    loud.bound = 0.1;
    loud.lip_M = 1.0;
    loud.eval = [](const std::vector<double>&) { return 0.5; };

    ConvergenceReport report =
        weak_convergence_test(family_point_at_inv(), target, {osc, tame, loud}, cfg);
    REQUIRE(report.functions.size() == 3);
    CHECK_FALSE(report.functions[0].accepted);
    CHECK(report.functions[0].rejection == "violates declared Lipschitz constant");
    CHECK_FALSE(report.functions[0].series.empty());  // raw series still reported
    CHECK(report.functions[1].accepted);
    CHECK_FALSE(report.functions[2].accepted);
    CHECK(report.functions[2].rejection == "exceeds declared bound");

    CHECK_THROWS_AS(weak_convergence_test(family_point_at_inv(), target, {}, cfg),
                    DomainError);
}

TEST_CASE("quantization schedules weakly converge to the source") {
    auto s = testsupport::random_euclid_space(15, 2, 2200);
    DiscreteMeasure P = testsupport::random_measure(s, 2201);
    MeasureFamily family{[&, s](int n) {
        return atoms_of(quantize(P, build_partition(*s, s->bound() / n)).quantized);
    }};
    LimitConfig cfg = LimitConfig::doubling(1, 4096);
    cfg.window = 3;
    auto fns = cone_functions(2, 15, 21);
    ConvergenceReport report =
        weak_convergence_test(family, integrator_from_atoms(atoms_of(P)), fns, cfg);
    CHECK(report.converges);
    for (std::size_t t = 0; t < cfg.schedule.size(); ++t)
        CHECK(report.sup_series[t] <= s->bound() / cfg.schedule[t] + 1e-9);
}

TEST_CASE("charge targets integrate through level sets") {
    // constant family: the charge target is the measure itself
    Atoms atoms{{{0.2}, {0.8}}, {0.5, 0.5}};
    auto target = integrator_from_family(family_constant(atoms), 0.01,
                                         LimitConfig::doubling());
    BoundedLipFn f;
    f.id = "coord";
    f.bound = 1.0;
    f.lip_M = 1.0;
    f.eval = [](const std::vector<double>& x) { return x[0]; };
    CHECK(target(f) == doctest::Approx(0.5).epsilon(0.05));
    CHECK_THROWS_AS(integrator_from_family(family_constant(atoms), 0.0,
                                           LimitConfig::doubling()),
                    DomainError);
}

TEST_CASE("portmanteau classification") {
    Atoms target{{{0.0}}, {1.0}};
    std::vector<RealizedSet> sets;
    sets.push_back(interval_set("away", 0.5, 1.5));
    sets.push_back(interval_set("around_zero", -0.5, 0.25, true));
    sets.push_back(interval_set("boundary_hit", -1.0, 0.0));

    LimitConfig cfg = LimitConfig::doubling();
    cfg.window = 4;
    PortmanteauReport report =
        portmanteau_check(family_point_at_inv(), target, sets, 1e-6, cfg);
    REQUIRE(report.entries.size() == 3);

    CHECK(report.entries[0].continuity);
    CHECK(report.entries[0].converged);
    CHECK(report.entries[0].target_mass == 0.0);

    CHECK(report.entries[1].continuity);
    CHECK(report.entries[1].converged);
    CHECK(report.entries[1].target_mass == doctest::Approx(1.0));

    CHECK_FALSE(report.entries[2].continuity);  // boundary point 0 carries mass
    CHECK(report.pass);
}

TEST_CASE("oscillation witness extraction") {
    SUBCASE("alternating pair") {
        OscillationOutcome out = oscillation_extract(alternating_seq(2), 2, 20);
        REQUIRE(out.witness.has_value());
        CHECK(out.witness->indices == std::vector<int>{1, 2});
        CHECK(out.witness->sets ==
              std::vector<std::vector<int>>{{0}, {1}});
        CHECK_FALSE(out.exhaustion.has_value());

        OscillationOutcome more = oscillation_extract(alternating_seq(2), 3, 20);
        REQUIRE(more.exhaustion.has_value());
        CHECK(more.exhaustion->step == 3);
    }

    SUBCASE("moving atom supports many rounds") {
        OscillationOutcome out = oscillation_extract(moving_seq(), 6, 60);
        REQUIRE(out.witness.has_value());
        CHECK(out.witness->indices == std::vector<int>{1, 2, 3, 4, 5, 6});
        for (int i = 0; i < 6; ++i)
            CHECK(out.witness->sets[i] == std::vector<int>{i});
    }

    SUBCASE("constant sequence exhausts honestly") {
        OscillationOutcome out = oscillation_extract(alternating_seq(1), 2, 50);
        REQUIRE(out.exhaustion.has_value());
        CHECK(out.exhaustion->step == 2);
        CHECK_FALSE(out.witness.has_value());
    }

    CHECK_THROWS_AS(oscillation_extract(moving_seq(), 0, 10), DomainError);
}

TEST_CASE("union set verdict shows the oscillation gap") {
    OscillationOutcome out = oscillation_extract(moving_seq(), 6, 60);
    REQUIRE(out.witness.has_value());
    UnionSetReport verdict = union_set_verdict(*out.witness, moving_seq());
    CHECK(verdict.union_set == std::vector<int>{1, 3, 5});
    CHECK(verdict.series == std::vector<double>{0, 1, 0, 1, 0, 1});
    CHECK(verdict.oscillation_gap == doctest::Approx(1.0));
    CHECK(verdict.pass);

    OscillationOutcome two = oscillation_extract(alternating_seq(2), 2, 20);
    CHECK_THROWS_AS(union_set_verdict(*two.witness, alternating_seq(2)), DomainError);
}
