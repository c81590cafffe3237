#include <doctest.h>

#include "charges/errors.hpp"
#include "charges/metric.hpp"
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

TEST_CASE("euclidean distance") {
    CHECK(euclidean({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0));
    CHECK(euclidean({1.5}, {1.5}) == 0.0);
    CHECK_THROWS_AS(euclidean({0.0}, {0.0, 1.0}), StructuralError);
}

TEST_CASE("space construction and validation") {
    auto s = line({0.0, 0.4, 1.0}, 1.0);
    CHECK(s->size() == 3);
    CHECK(s->d(0, 2) == doctest::Approx(1.0));
    CHECK(s->d(1, 2) == doctest::Approx(0.6));
    CHECK(validate_metric(*s).valid());

    CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({{0.0, 1.0}}, 1.0), StructuralError);

    SUBCASE("random spaces validate clean") {
        for (int t = 0; t < 20; ++t) {
            CHECK(validate_metric(*testsupport::random_euclid_space(8, 2, 100 + t)).valid());
            CHECK(validate_metric(*testsupport::random_matrix_space(8, 200 + t)).valid());
        }
    }

    SUBCASE("violations are reported by kind") {
        using K = MetricViolation::Kind;
        auto bad = FiniteMetricSpace::from_matrix(
            {{0.5, 1.0, 0.1}, {2.0, 0.0, 0.1}, {0.1, 0.1, 0.0}}, 0.5);
        auto report = validate_metric(bad);
        CHECK_FALSE(report.valid());
        bool identity = false, symmetry = false, bound = false, triangle = false;
        for (const auto& v : report.violations) {
            identity = identity || v.kind == K::Identity;
            symmetry = symmetry || v.kind == K::Symmetry;
            bound = bound || v.kind == K::Bound;
            triangle = triangle || v.kind == K::Triangle;
            CHECK(!v.describe().empty());
        }
        CHECK(identity);
        CHECK(symmetry);
        CHECK(bound);
        CHECK(triangle);

        auto neg = FiniteMetricSpace::from_matrix({{0.0, -1.0}, {-1.0, 0.0}}, 1.0);
        bool negative = false;
        for (const auto& v : validate_metric(neg).violations)
            negative = negative || v.kind == K::Negative;
        CHECK(negative);
    }
}

TEST_CASE("diameter") {
    auto s = line({0.0, 0.4, 1.0}, 1.0);
    CHECK(diameter(*s, {0, 1, 2}) == doctest::Approx(1.0));
    CHECK(diameter(*s, {1}) == 0.0);
    CHECK_THROWS_AS(diameter(*s, {}), DomainError);
    CHECK_THROWS_AS(diameter(*s, {5}), DomainError);
}

TEST_CASE("greedy separated sets") {
    auto s = line({0.0, 0.1, 0.3, 0.35, 0.9}, 1.0);
    SeparatedSet set = greedy_separated_set(*s, 0.2);
    CHECK(set.indices == std::vector<int>{0, 2, 4});
    for (std::size_t a = 0; a < set.indices.size(); ++a)
        for (std::size_t b = a + 1; b < set.indices.size(); ++b)
            CHECK(s->d(set.indices[a], set.indices[b]) > set.eps);

    CHECK(greedy_separated_set(*s, 0.2, 2).indices == std::vector<int>{0, 2});
    CHECK_THROWS_AS(greedy_separated_set(*s, 0.0), DomainError);

    SUBCASE("separation invariant on random spaces") {
        for (int t = 0; t < 10; ++t) {
            auto r = testsupport::random_euclid_space(30, 2, 300 + t);
            SeparatedSet y = greedy_separated_set(*r, 0.3);
            for (std::size_t a = 0; a < y.indices.size(); ++a)
                for (std::size_t b = a + 1; b < y.indices.size(); ++b)
                    CHECK(r->d(y.indices[a], y.indices[b]) > 0.3);
        }
    }
}

TEST_CASE("covering certificates") {
    for (int t = 0; t < 10; ++t) {
        auto s = testsupport::random_matrix_space(20, 400 + t);
        CoverCertificate cert = covering_report(*s, 0.25);
        CHECK(cert.covered);
        for (int p = 0; p < s->size(); ++p) {
            double best = s->bound() + 1.0;
            for (int c : cert.centers) best = std::min(best, s->d(p, c));
            CHECK(best <= cert.radius);
        }
    }
}

TEST_CASE("partition construction") {
    SUBCASE("half-delta cover on a small line") {
        auto s = line({0.0, 0.4, 1.0}, 1.0);
        Partition part = build_partition(*s, 0.5);
        // greedy centers at eps = 0.25 keep all three points apart
        CHECK(part.cells == std::vector<std::vector<int>>{{0}, {1}, {2}});
        CHECK(part.reps == std::vector<int>{0, 1, 2});
        CHECK(part.mesh == 0.0);
    }

    SUBCASE("cells partition and mesh bounds delta") {
        for (int t = 0; t < 10; ++t) {
            auto s = testsupport::random_euclid_space(40, 2, 500 + t);
            for (double delta : {0.5, 0.25, 0.125}) {
                Partition part = build_partition(*s, delta);
                std::vector<bool> seen(s->size(), false);
                for (std::size_t k = 0; k < part.cells.size(); ++k) {
                    bool rep_in_cell = false;
                    for (int p : part.cells[k]) {
                        CHECK_FALSE(seen[p]);
                        seen[p] = true;
                        rep_in_cell = rep_in_cell || p == part.reps[k];
                    }
                    CHECK(rep_in_cell);
                    CHECK(diameter(*s, part.cells[k]) <= delta);
                }
                for (bool b : seen) CHECK(b);
                CHECK(part.mesh <= delta);
            }
        }
    }

    CHECK_THROWS_AS(build_partition(*line({0.0}, 1.0), -1.0), DomainError);
}
