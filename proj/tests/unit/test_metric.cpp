#include <doctest.h>

#include <cmath>
#include <random>

#include "fif/errors.hpp"
#include "fif/metric.hpp"
#include "oracles.hpp"

using namespace fif;

TEST_CASE("d_theta weights the vertical gap") {
    const ThetaMetric m(0.25);
    CHECK(d_theta({0.0, 0.0}, {0.5, 2.0}, m) == doctest::Approx(1.0));
    CHECK(d_one({0.0, 0.0}, {0.5, 2.0}) == doctest::Approx(2.5));
    CHECK(d_theta({0.3, 0.7}, {0.3, 0.7}, m) == 0.0);
    CHECK_THROWS_AS(ThetaMetric(0.0), InvalidInput);
    CHECK_THROWS_AS(ThetaMetric(1.0), InvalidInput);
}

TEST_CASE("d_theta is a metric on random triples") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const ThetaMetric m(0.2);
    for (int i = 0; i < 500; ++i) {
        const Point2 p{u(rng), u(rng)}, q{u(rng), u(rng)}, r{u(rng), u(rng)};
        CHECK(d_theta(p, q, m) == doctest::Approx(d_theta(q, p, m)));
        CHECK(d_theta(p, r, m) <= d_theta(p, q, m) + d_theta(q, r, m) + 1e-15);
        // theta-weighted distance is squeezed between theta*d1 and d1
        CHECK(d_theta(p, q, m) <= d_one(p, q) + 1e-15);
        CHECK(d_theta(p, q, m) >= 0.2 * d_one(p, q) - 1e-15);
    }
}

TEST_CASE("PointSet deduplication") {
    CHECK_THROWS_AS(PointSet({}), InvalidInput);
    const PointSet exact({{0, 0}, {0, 0}, {1, 1}});
    CHECK(exact.size() == 2);
    const PointSet coarse({{0, 0}, {1e-4, 0}, {0.5, 0.5}}, 1e-3);
    CHECK(coarse.size() == 2);
    // every input point stays within the tolerance of a kept point
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> pts(2000);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const PointSet ps(pts, 0.01);
    CHECK(ps.size() < pts.size());
    double worst = 0.0;
    for (const auto& p : pts) {
        double best = 1e9;
        for (const auto& q : ps) best = std::min(best, std::max(std::fabs(p.x - q.x), std::fabs(p.y - q.y)));
        worst = std::max(worst, best);
    }
    CHECK(worst <= 0.01);
}

TEST_CASE("hausdorff on hand-made sets") {
    const PointSet a({{0, 0}, {1, 0}});
    const PointSet b({{0, 0}, {1, 0}, {0.5, 0.3}});
    const auto d1 = ProductMetric::d1();
    CHECK(hausdorff(a, a, d1) == 0.0);
    CHECK(directed_hausdorff(a, b, d1) == 0.0);
    CHECK(directed_hausdorff(b, a, d1) == doctest::Approx(0.8));
    CHECK(hausdorff(a, b, d1) == doctest::Approx(0.8));
}

TEST_CASE("pruned hausdorff agrees with brute force") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point2> A(50 + trial * 7), B(40 + trial * 5);
        std::vector<oracle::P> oa, ob;
        for (auto& p : A) {
            p = {u(rng), u(rng)};
            oa.push_back({p.x, p.y});
        }
        for (auto& p : B) {
            p = {u(rng), 0.5 * u(rng)};
            ob.push_back({p.x, p.y});
        }
        const PointSet a(A), b(B);
        for (double w : {1.0, 0.3}) {
            const auto metric = w == 1.0 ? ProductMetric::d1() : ProductMetric::weighted(ThetaMetric(w));
            const double fast = hausdorff(a, b, metric);
            CHECK(fast == doctest::Approx(oracle::hausdorff(oa, ob, w)).epsilon(1e-14));
            CHECK(fast == doctest::Approx(hausdorff_exhaustive(a, b, metric)).epsilon(1e-14));
        }
    }
}

TEST_CASE("comparison functions") {
    const auto banach = ComparisonFunction::banach(0.5);
    const auto hyper = ComparisonFunction::rakotch_hyperbolic();
    CHECK(banach(2.0) == 1.0);
    CHECK(hyper(1.0) == 0.5);
    CHECK(hyper(0.0) == 0.0);
    CHECK_THROWS_AS(hyper(-1.0), InvalidInput);
    CHECK_THROWS_AS(ComparisonFunction::banach(1.0), InvalidInput);

    // t/(1+t) iterates to t/(1+kt)
    for (int k : {1, 5, 100}) {
        CHECK(phi_iterate(hyper, 2.0, k) == doctest::Approx(2.0 / (1.0 + 2.0 * k)));
    }
    CHECK(phi_iterate(banach, 1.0, 10) == doctest::Approx(std::pow(0.5, 10)));
}

TEST_CASE("certify_rakotch separates Rakotch from non-contractive phi") {
    const auto grid = log_grid(1e-6, 1e3, 200);
    REQUIRE(grid.size() == 200);
    CHECK(grid.front() == doctest::Approx(1e-6));
    CHECK(grid.back() == doctest::Approx(1e3));

    CHECK(certify_rakotch(ComparisonFunction::banach(0.9), grid).passed());
    const auto hyper = certify_rakotch(ComparisonFunction::rakotch_hyperbolic(), grid);
    CHECK(hyper.passed());
    // alpha(t) = 1/(1+t) approaches 1 at small t: not Banach on any grid reaching 0
    CHECK(hyper.worst_margin < 1e-5);

    const auto identity = certify_rakotch(ComparisonFunction::custom([](double t) { return t; }, "t"), grid);
    CHECK_FALSE(identity.passed());
    CHECK_FALSE(identity.alpha_below_one);

    // phi(t)/t increasing: fails the monotonicity requirement
    const auto bad = certify_rakotch(
        ComparisonFunction::custom([](double t) { return t * t / (1.0 + t * t); }, "t^2/(1+t^2)"), grid);
    CHECK_FALSE(bad.alpha_non_increasing);
}
