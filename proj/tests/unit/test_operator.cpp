#include <doctest.h>

#include <cmath>

#include "canonical.hpp"
#include "fif/errors.hpp"
#include "fif/interp_operator.hpp"
#include "fif/tail_bound.hpp"
#include "oracles.hpp"

using namespace fif;
using oracle::Family;

namespace {

Family to_oracle(FamilyKind k) { return k == FamilyKind::A ? Family::A : Family::B; }

struct Frozen {
    double x;
    double a;
    double b;
};

// Exact rational values of the truncated fixed point at dyadic abscissae.
constexpr Frozen kFrozen[] = {
    {1.0 / 4, 5.0 / 12, 29.0 / 60},      {1.0 / 8, 1.0 / 4, 785.0 / 2136},  {5.0 / 8, 59.0 / 72, 113.0 / 126},
    {3.0 / 16, 25.0 / 72, 1513.0 / 3472}, {13.0 / 16, 409.0 / 432, 221.0 / 216},
};

}  // namespace

TEST_CASE("oracle reproduces the frozen values") {
    for (const auto& f : kFrozen) {
        CHECK(static_cast<double>(oracle::fstar(Family::A, f.x)) == doctest::Approx(f.a).epsilon(1e-15));
        CHECK(static_cast<double>(oracle::fstar(Family::B, f.x)) == doctest::Approx(f.b).epsilon(1e-15));
    }
}

TEST_CASE("grid construction") {
    const auto sys = canonical::system();
    const auto g = make_grid(sys, 4096);
    CHECK(g.size() == 4097);  // dyadic nodes already lie on the grid
    CHECK(g.spacing() == doctest::Approx(1.0 / 4096));
    const auto odd = make_grid(sys, 10);
    CHECK(odd.size() > 11);
    for (std::size_t n = 0; n <= 8; ++n) {
        CHECK(std::find(odd.xs->begin(), odd.xs->end(), sys.x_at(n)) != odd.xs->end());
    }
}

TEST_CASE("seeds") {
    const auto sys = canonical::system();
    CHECK_NOTHROW(check_seed(sys, SeedFunction::chord(sys)));
    CHECK_NOTHROW(check_seed(sys, SeedFunction::plateau(sys)));
    CHECK_NOTHROW(check_seed(sys, SeedFunction::random(sys, 3)));
    CHECK_THROWS_AS(check_seed(sys, SeedFunction("zero", [](double) { return 0.0; })), InvalidInput);
    const auto r = SeedFunction::random(sys, 9);
    for (int i = 0; i <= 100; ++i) {
        const double v = r(i / 100.0);
        CHECK(sys.y_space().contains(v, 0.0));
    }
}

TEST_CASE("Picard iteration reaches the fixed point at the frozen abscissae") {
    for (auto kind : {FamilyKind::A, FamilyKind::B}) {
        const auto ms = canonical::maps(kind);
        const auto grid = make_grid(ms.system(), 4096);
        const auto res = picard_iterate(ms, SeedFunction::chord(ms.system()), grid);
        REQUIRE(res.report.converged);
        CHECK(res.report.sup_residual <= 1e-10);
        for (const auto& f : kFrozen) {
            const double want = kind == FamilyKind::A ? f.a : f.b;
            CHECK(res.f(f.x) == doctest::Approx(want).epsilon(1e-12));
        }
        const auto rep = verify_interpolation(res.f, ms.system(), 1e-9);
        CHECK(rep.passed());
        CHECK(rep.max_error <= 1e-9);
        // residual history is the sequence of successive distances and ends below tol
        CHECK(res.report.history.size() == res.report.iterations);
        CHECK(res.report.history.back() <= 1e-10);
    }
}

TEST_CASE("fixed point is seed independent and T-invariant") {
    const auto ms = canonical::maps(FamilyKind::B);
    const auto grid = make_grid(ms.system(), 1024);
    const auto f1 = picard_iterate(ms, SeedFunction::chord(ms.system()), grid);
    const auto f2 = picard_iterate(ms, SeedFunction::plateau(ms.system()), grid);
    CHECK(uniform_distance(f1.f, f2.f) <= 2e-10);
    CHECK(uniform_distance(f1.f, apply_T(f1.f, ms)) <= 2e-10);
}

TEST_CASE("recursive evaluation matches the oracle at arbitrary abscissae") {
    for (auto kind : {FamilyKind::A, FamilyKind::B}) {
        const auto ms = canonical::shared(kind);
        const auto f = Interpolant::recursive(ms, SeedFunction::chord(ms->system()), 200);
        for (double x : {0.0, 0.1, 0.33, 0.5, 0.71, 0.9, 0.99, 0.999, 1.0}) {
            const double want = static_cast<double>(oracle::fstar(to_oracle(kind), x));
            CHECK(f(x) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("T agrees with its pointwise definition") {
    const auto ms = canonical::maps(FamilyKind::B);
    const auto seed = SeedFunction::bump(ms.system(), 0.1, 2);
    for (std::size_t n = 1; n <= 8; ++n) {
        const double x = 0.5 * (ms.system().x_at(n - 1) + ms.system().x_at(n));
        const double u = l_inverse(ms.subinterval(n), x);
        CHECK(t_value(ms, seed, x) == doctest::Approx(w_eval(ms.vertical(), n, u, seed(u))));
        CHECK(t_value_via(ms, seed, x, n) == t_value(ms, seed, x));
    }
    CHECK(t_value(ms, seed, 1.0) == 1.0);
    CHECK(t_value(ms, seed, 0.999) == 1.0);
}

TEST_CASE("T is a phi-contraction on random pairs") {
    for (auto kind : {FamilyKind::A, FamilyKind::B}) {
        const auto ms = canonical::maps(kind);
        const auto grid = make_grid(ms.system(), 512);
        for (std::uint64_t s = 0; s < 20; ++s) {
            const auto g = Interpolant::sample(SeedFunction::random(ms.system(), 2 * s), grid);
            const auto h = Interpolant::sample(SeedFunction::random(ms.system(), 2 * s + 1), grid);
            const auto r = t_contraction_check(ms, g, h);
            CHECK(r.holds);
            CHECK(r.dist_TgTh <= r.dist_gh);
        }
    }
}

TEST_CASE("iteration cap is reported as non-convergence") {
    const auto ms = canonical::maps(FamilyKind::A);
    const auto res = picard_iterate(ms, SeedFunction::chord(ms.system()), make_grid(ms.system(), 256), 1e-10, 1);
    CHECK_FALSE(res.report.converged);
    CHECK(res.report.iterations == 1);
}

TEST_CASE("constant data give the zero function") {
    auto sys = build_system(SequenceSpec::geometric(2, -1, 1), SequenceSpec::constant(0.0), 8, {0.0, 1.0});
    const auto ms = build_map_system(std::move(sys), FamilySpec::family_a());
    const auto res = picard_iterate(ms, SeedFunction::chord(ms.system()), make_grid(ms.system(), 512));
    REQUIRE(res.report.converged);
    for (double v : res.f.grid().values) CHECK(std::fabs(v) <= 1e-9);
}

TEST_CASE("grid refinement stabilises") {
    const auto ms = canonical::maps(FamilyKind::A);
    const auto study = refine_until_stable(ms, SeedFunction::chord(ms.system()), 64, 4096, 1e-3);
    CHECK(study.stable);
    CHECK(study.difference <= 1e-3);
}

TEST_CASE("depth 12 stays within the depth 8 tail bound") {
    const auto m8 = canonical::maps(FamilyKind::A, 8);
    const auto m12 = canonical::maps(FamilyKind::A, 12);
    const auto g = make_grid(m12.system(), 4096);
    const auto f8 = picard_iterate(m8, SeedFunction::chord(m8.system()), g);
    const auto f12 = picard_iterate(m12, SeedFunction::chord(m12.system()), g);
    double worst = 0.0;
    for (double x : *g.xs) {
        if (x <= m8.system().x_at(8)) worst = std::max(worst, std::fabs(f8.f(x) - f12.f(x)));
    }
    CHECK(worst <= tail_bound(m8).bound);
}
