#include <doctest.h>

#include <cmath>

#include "charges/errors.hpp"
#include "charges/lipschitz.hpp"
#include "charges/simplex.hpp"
#include "charges/transport.hpp"
#include "support/helpers.hpp"

using namespace charges;

namespace {

std::shared_ptr<const FiniteMetricSpace> line(std::vector<double> xs, double bound) {
    std::vector<std::vector<double>> pts;
    for (double x : xs) pts.push_back({x});
    return std::make_shared<FiniteMetricSpace>(
        FiniteMetricSpace::from_points(std::move(pts), bound));
}

} // namespace

TEST_CASE("simplex solver basics") {
    // max x + y s.t. x <= 2, y <= 3, x + y <= 4
    SimplexSolution sol = simplex_maximize({{1, 0}, {0, 1}, {1, 1}}, {2, 3, 4}, {1, 1});
    CHECK(sol.objective == doctest::Approx(4.0));
    CHECK_THROWS_AS(simplex_maximize({{1, 0}, {0, 1}}, {-1, 2}, {1, 0}), DomainError);
    CHECK_THROWS_AS(simplex_maximize({{1, 0}}, {1, 2}, {1, 0}), StructuralError);
    // unbounded: maximize y with no constraint on y
    CHECK_THROWS_AS(simplex_maximize({{1, 0}}, {1}, {0, 1}), SolverError);
}

TEST_CASE("transport on two points") {
    auto s = line({0.0, 1.0}, 1.0);
    DiscreteMeasure d0(s, {1.0, 0.0}), d1(s, {0.0, 1.0});
    TransportPlan plan = w1_primal(d0, d1, *s);
    CHECK(plan.cost == doctest::Approx(1.0));
    CHECK(plan.coupling[0][1] == doctest::Approx(1.0));
    CHECK(w1_dual(d0, d1, *s).value == doctest::Approx(1.0));
    CHECK(w1_primal(d0, d0, *s).cost == doctest::Approx(0.0));
    CHECK(tv_distance(d0, d1) == doctest::Approx(1.0));
    CHECK(tv_distance(d0, d0) == 0.0);
}

TEST_CASE("transport splits mass optimally") {
    auto s = line({0.0, 0.5, 1.0}, 1.0);
    DiscreteMeasure mu(s, {1.0, 0.0, 0.0});
    DiscreteMeasure nu(s, {0.0, 0.5, 0.5});
    // forced: half travels 0.5, half travels 1.0
    CHECK(w1_primal(mu, nu, *s).cost == doctest::Approx(0.75));
    CHECK(w1_dual(mu, nu, *s).value == doctest::Approx(0.75));
}

TEST_CASE("headline contrast: w1 shrinks while tv stays 1") {
    for (int N : {1, 2, 16, 256}) {
        auto s = line({0.0, 1.0 / (2.0 * N)}, 1.0);
        DiscreteMeasure target(s, {1.0, 0.0}), moving(s, {0.0, 1.0});
        CHECK(w1_primal(moving, target, *s).cost == 0.5 / N);
        CHECK(tv_distance(moving, target) == 1.0);
    }
}

TEST_CASE("duality gap within tolerance on random instances") {
    for (int t = 0; t < 25; ++t) {
        auto s = (t % 2 == 0) ? testsupport::random_euclid_space(7, 2, 600 + t)
                              : testsupport::random_matrix_space(7, 600 + t);
        DiscreteMeasure mu = testsupport::random_measure(s, 700 + t);
        DiscreteMeasure nu = testsupport::random_measure(s, 800 + t);
        CHECK(duality_gap(mu, nu, *s) <= 1e-7);
    }
}

TEST_CASE("primal matches exhaustive vertex enumeration") {
    for (int t = 0; t < 25; ++t) {
        auto s = testsupport::random_matrix_space(4, 900 + t);
        const int denom = 8;
        auto wa = testsupport::random_integer_weights(4, denom, 1000 + t);
        auto wb = testsupport::random_integer_weights(4, denom, 1100 + t);
        DiscreteMeasure mu = testsupport::measure_from_integers(s, wa, denom);
        DiscreteMeasure nu = testsupport::measure_from_integers(s, wb, denom);

        double oracle = testsupport::brute_force_transport(wa, wb, s->matrix()) / denom;
        CHECK(std::abs(w1_primal(mu, nu, *s).cost - oracle) <= 1e-12);
    }
}

TEST_CASE("dual witness is 1-Lipschitz") {
    for (int t = 0; t < 5; ++t) {
        auto s = testsupport::random_euclid_space(6, 2, 1200 + t);
        DiscreteMeasure mu = testsupport::random_measure(s, 1300 + t);
        DiscreteMeasure nu = testsupport::random_measure(s, 1400 + t);
        DualSolution sol = w1_dual(mu, nu, *s);
        CHECK(verify_lipschitz(sol.witness.f, *s, 1.0, 1e-7).ok);
        double attained = 0.0;
        for (int i = 0; i < s->size(); ++i)
            attained += sol.witness.f[i] * (mu.weight(i) - nu.weight(i));
        CHECK(attained == doctest::Approx(sol.value));
    }
}

TEST_CASE("lipschitz sup estimate lower-bounds the dual") {
    auto s = testsupport::random_euclid_space(8, 2, 1500);
    DiscreteMeasure mu = testsupport::random_measure(s, 1501);
    DiscreteMeasure nu = testsupport::random_measure(s, 1502);
    auto family = cone_family(*s, 20, 1503);
    double est = lipschitz_sup_estimate(mu, nu, *s, family);
    CHECK(est <= w1_dual(mu, nu, *s).value + 1e-9);

    std::vector<std::vector<double>> steep{{0.0, 100.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(lipschitz_sup_estimate(mu, nu, *s, steep), DomainError);
}

TEST_CASE("transport rejects mismatched spaces") {
    auto s2 = line({0.0, 1.0}, 1.0);
    auto s3 = line({0.0, 0.5, 1.0}, 1.0);
    DiscreteMeasure small(s2, {0.5, 0.5});
    DiscreteMeasure big(s3, {0.5, 0.25, 0.25});
    CHECK_THROWS_AS(w1_primal(small, big, *s3), StructuralError);
    CHECK_THROWS_AS(tv_distance(small, big), StructuralError);
}
