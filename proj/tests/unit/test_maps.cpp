#include <doctest.h>

#include <cmath>

#include "canonical.hpp"
#include "fif/errors.hpp"
#include "fif/maps.hpp"
#include "fif/tail_bound.hpp"
#include "oracles.hpp"

using namespace fif;
using oracle::Family;

namespace {

Family to_oracle(FamilyKind k) { return k == FamilyKind::A ? Family::A : Family::B; }

}  // namespace

TEST_CASE("horizontal maps") {
    const auto ms = canonical::maps(FamilyKind::A);
    for (std::size_t n = 1; n <= 9; ++n) {
        const auto& l = ms.subinterval(n);
        CHECK(l_eval(l, 0.0) == doctest::Approx(static_cast<double>(oracle::x(n - 1))));
        CHECK(l_eval(l, 1.0) == doctest::Approx(static_cast<double>(oracle::x(n))));
        CHECK(l.lipschitz() == doctest::Approx(std::pow(2.0, -static_cast<double>(n))));
        CHECK(l_inverse(l, l_eval(l, 0.3)) == doctest::Approx(0.3));
    }
    CHECK(ms.sup_Ln() == 0.5);
    CHECK_THROWS_AS(l_eval(ms.subinterval(1), 1.5), DomainError);
    CHECK_THROWS_AS(ms.subinterval(10), IndexError);
}

TEST_CASE("vertical coefficients match closed forms") {
    for (auto kind : {FamilyKind::A, FamilyKind::B}) {
        const auto ms = canonical::maps(kind);
        for (std::size_t n = 1; n <= 20; ++n) {
            const auto co = ms.vertical().coefficients(n);
            CHECK(co.c == doctest::Approx(static_cast<double>(oracle::c(to_oracle(kind), n))).epsilon(1e-14));
            CHECK(co.g == doctest::Approx(static_cast<double>(oracle::g(n))).epsilon(1e-14));
        }
    }
}

TEST_CASE("join-up conditions W_n(a, m) = y_{n-1} and W_n(b, M) = y_n") {
    for (auto kind : {FamilyKind::A, FamilyKind::B}) {
        const auto ms = canonical::maps(kind);
        const auto& sys = ms.system();
        for (std::size_t n = 1; n <= sys.depth() + 1; ++n) {
            CHECK(w_eval(ms.vertical(), n, sys.a(), sys.m()) == doctest::Approx(sys.y_at(n - 1)).epsilon(1e-14));
            CHECK(w_eval(ms.vertical(), n, sys.b(), sys.M()) == doctest::Approx(sys.y_at(n)).epsilon(1e-14));
            const Point2 lo = f_eval(ms, n, {sys.a(), sys.m()});
            const Point2 hi = f_eval(ms, n, {sys.b(), sys.M()});
            CHECK(lo.x == doctest::Approx(sys.x_at(n - 1)));
            CHECK(hi.x == doctest::Approx(sys.x_at(n)));
        }
    }
}

TEST_CASE("family B hand value") {
    const auto ms = canonical::maps(FamilyKind::B);
    CHECK(w_eval(ms.vertical(), 1, 0.5, 0.5) == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("theta and L") {
    const auto a = canonical::maps(FamilyKind::A);
    CHECK(a.L() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(a.theta() == doctest::Approx(3.0 / 14.0).epsilon(1e-14));
    CHECK(a.theta() == compute_theta(a.sup_Ln(), a.L()));
    const auto b = canonical::maps(FamilyKind::B);
    CHECK(b.L() == doctest::Approx(19.0 / 108.0).epsilon(1e-14));
    CHECK(b.theta() == doctest::Approx(27.0 / 127.0).epsilon(1e-14));
    CHECK(b.theta() == doctest::Approx(static_cast<double>(oracle::theta(Family::B, 8))).epsilon(1e-14));
    CHECK_THROWS_AS(compute_theta(1.0, 0.5), ValidationError);
    CHECK_THROWS_AS(compute_theta(0.5, -1.0), InvalidInput);
}

TEST_CASE("phi per family") {
    CHECK(canonical::maps(FamilyKind::A).phi().kind() == ComparisonFunction::Kind::Banach);
    CHECK(canonical::maps(FamilyKind::A).phi().banach_constant() == 0.5);
    CHECK(canonical::maps(FamilyKind::B).phi().kind() == ComparisonFunction::Kind::RakotchHyperbolic);
}

TEST_CASE("misconfigured families are rejected") {
    // Y = [0, 1] is not invariant: W_4(0, 1) exceeds 1
    CHECK_THROWS_AS(build_map_system(canonical::system(8, {0.0, 1.0}), FamilySpec::family_a()), RangeViolation);
    CHECK_THROWS_AS(build_map_system(canonical::system(8, {0.0, 1.0}), FamilySpec::family_b()), RangeViolation);
    // family B needs Y in [0, inf)
    CHECK_THROWS_AS(build_map_system(canonical::system(8, {-1.0, 1.25}), FamilySpec::family_b()), ValidationError);
    // d_n must lie in [0, 1) and tend to 0
    CHECK_THROWS_AS(build_map_system(canonical::system(), FamilySpec::family_a(SequenceSpec::constant(1.0))),
                    ValidationError);
    CHECK_THROWS_AS(build_map_system(canonical::system(), FamilySpec::family_a(SequenceSpec::constant(0.5))),
                    ValidationError);
}

TEST_CASE("d_n that stays at 0.5 for small n is accepted on a larger Y") {
    auto d = SequenceSpec::function([](std::size_t n) { return n <= 8 ? 0.5 : std::pow(2.0, -static_cast<double>(n)); },
                                    0.0, "0.5 then 2^-n");
    const auto ms = build_map_system(canonical::system(8, {0.0, 2.0}), FamilySpec::family_a(d));
    CHECK(ms.vertical().coefficients(3).d == 0.5);
}

TEST_CASE("w_eval checks") {
    const auto ms = canonical::maps(FamilyKind::A);
    CHECK_THROWS_AS(w_eval(ms.vertical(), 0, 0.5, 0.5), IndexError);
    CHECK_THROWS_AS(w_eval(ms.vertical(), 10, 0.5, 0.5), IndexError);
    CHECK_THROWS_AS(w_eval(ms.vertical(), 1, 0.5, 2.0), DomainError);
}

TEST_CASE("images stay inside Y and the diameter estimate dominates") {
    for (auto kind : {FamilyKind::A, FamilyKind::B}) {
        const auto ms = canonical::maps(kind);
        const auto Y = ms.system().y_space();
        for (std::size_t n = 1; n <= 200; ++n) {
            const auto im = ms.vertical().image(n);
            CHECK(im.lo >= Y.lo - 1e-12);
            CHECK(im.hi <= Y.hi + 1e-12);
            CHECK(im.diam() <= ms.vertical().diam_estimate(n) + 1e-12);
        }
    }
}

TEST_CASE("map Rakotch certificate passes on sampled pairs") {
    for (auto kind : {FamilyKind::A, FamilyKind::B}) {
        const auto ms = canonical::maps(kind);
        const auto cert = rakotch_certificate(ms, sample_pairs(ms, 1000, 42));
        CHECK(cert.status == CertificateStatus::Pass);
        CHECK(cert.violations == 0);
        CHECK(cert.checks == 8000);
        CHECK(cert.theta == ms.theta());
        CHECK(cert.worst_ratio < 1.0);
    }
}

TEST_CASE("sample_pairs is deterministic in the seed") {
    const auto ms = canonical::maps(FamilyKind::A);
    const auto p = sample_pairs(ms, 10, 5);
    const auto q = sample_pairs(ms, 10, 5);
    const auto r = sample_pairs(ms, 10, 6);
    CHECK(p == q);
    CHECK_FALSE(p == r);
}

TEST_CASE("family B is not Banach in y, family A is") {
    const auto b = non_banach_witness(canonical::maps(FamilyKind::B), 1, 1000, 42);
    CHECK(b.ratio >= 0.999);
    CHECK(b.ratio <= 1.0 + 1e-12);
    const auto a = non_banach_witness(canonical::maps(FamilyKind::A), 1, 1000, 42);
    CHECK(a.ratio == doctest::Approx(0.5));
}

TEST_CASE("tail bound") {
    const auto a = tail_bound(canonical::maps(FamilyKind::A));
    CHECK(a.bound > 0.0);
    CHECK(a.bound < 0.01);
    CHECK(a.argmax == 9);
    CHECK(a.non_increasing);
    // n = 9 term: |c_9| + d_9 diam(Y) + 3^-9 + 2^-9
    const double expected = std::fabs(static_cast<double>(oracle::c(Family::A, 9))) + 1.25 / 512 +
                            std::pow(3.0, -9) + 1.0 / 512;
    CHECK(a.bound == doctest::Approx(expected).epsilon(1e-12));
    const auto b = tail_bound(canonical::maps(FamilyKind::B));
    CHECK(b.bound > a.bound);
    // deeper truncation only shrinks the bound
    CHECK(tail_bound(canonical::maps(FamilyKind::A, 12)).bound < a.bound);
}

TEST_CASE("family B diameter estimate decays once inf Y > 0") {
    auto sys = build_system(SequenceSpec::geometric(2, -1, 1), SequenceSpec::geometric(3, -1, 1.5), 8, {0.5, 2.0});
    const auto ms = build_map_system(std::move(sys), FamilySpec::family_b());
    double prev = ms.vertical().diam_estimate(1);
    for (std::size_t n = 2; n <= 400; ++n) {
        const double cur = ms.vertical().diam_estimate(n);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
    CHECK(prev < 1e-3);
}
