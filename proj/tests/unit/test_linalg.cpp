#include "ecbs/errors.hpp"
#include "ecbs/expspline.hpp"
#include "ecbs/linalg.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ecbs;

TEST_SUITE("linalg") {

TEST_CASE("identity tridiagonal system returns the right-hand side") {
    TridiagonalSystem s{{0, 0, 0}, {1, 1, 1, 1}, {0, 0, 0}, {3, -1, 2.5, 7}};
    CHECK(solve_tridiagonal(s) == s.rhs);
}

TEST_CASE("tridiagonal solves match dense elimination") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(seed);
        const std::size_t n = 1 + seed % 16;
        const TridiagonalSystem s = oracle::random_tridiagonal(rng, n);
        const auto x = solve_tridiagonal(s);
        const auto want = oracle::dense_solve(oracle::dense(s), s.rhs);
        for (std::size_t i = 0; i < n; ++i) {
            CAPTURE(seed);
            CHECK(std::fabs(x[i] - want[i]) < 1e-12);
        }
    }
}

TEST_CASE("constant fit rows give c / (1 + 2 alpha1)") {
    const NodalWeights w = nodal_weights(SplineShape(1.0, 0.05));
    const std::size_t n = 11;
    const double c = 0.75;
    TridiagonalSystem s;
    s.diag.assign(n, 1.0);
    s.sub.assign(n - 1, w.alpha1);
    s.super.assign(n - 1, w.alpha1);
    s.super.front() = 2 * w.alpha1;
    s.sub.back() = 2 * w.alpha1;
    s.rhs.assign(n, c);
    for (const double d : solve_tridiagonal(s)) {
        CHECK(d == doctest::Approx(c / (1 + 2 * w.alpha1)).epsilon(1e-15));
    }
}

TEST_CASE("tridiagonal errors") {
    CHECK_THROWS_AS(solve_tridiagonal({{1}, {1, 1}, {}, {1, 1}}), InvalidParameter);
    CHECK_THROWS_AS(solve_tridiagonal({{}, {}, {}, {}}), InvalidParameter);
    try {
        solve_tridiagonal({{1}, {1, 1}, {1}, {1, 2}});
        FAIL("expected a singular system");
    } catch (const SingularSystem& e) {
        CHECK(e.index() == 1);
    }
    CHECK_THROWS_AS(solve_tridiagonal({{}, {0.0}, {}, {1}}), SingularSystem);
}

TEST_CASE("identity block system returns the right-hand side") {
    BlockTridiagonalSystem s;
    s.diag.assign(3, Mat2::identity());
    s.sub.assign(2, Mat2{});
    s.super.assign(2, Mat2{});
    s.rhs = {{1, 2}, {3, 4}, {5, 6}};
    CHECK(solve_block_tridiagonal(s) == s.rhs);
}

TEST_CASE("block solves match dense elimination") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(1000 + seed);
        const std::size_t n = 1 + seed % 8; // up to 16 scalar unknowns
        const BlockTridiagonalSystem s = oracle::random_block(rng, n);
        const auto x = oracle::flatten(solve_block_tridiagonal(s));
        const auto want = oracle::dense_solve(oracle::dense(s), oracle::flatten(s.rhs));
        for (std::size_t i = 0; i < x.size(); ++i) {
            CAPTURE(seed);
            CHECK(std::fabs(x[i] - want[i]) < 1e-12);
        }
    }
}

TEST_CASE("scalar systems embedded in blocks reproduce the scalar solver") {
    std::mt19937_64 rng(7);
    const std::size_t n = 9;
    const TridiagonalSystem a = oracle::random_tridiagonal(rng, n);
    const TridiagonalSystem b = oracle::random_tridiagonal(rng, n);
    BlockTridiagonalSystem s;
    for (std::size_t i = 0; i < n; ++i) {
        s.diag.push_back({a.diag[i], 0, 0, b.diag[i]});
        s.rhs.push_back({a.rhs[i], b.rhs[i]});
        if (i + 1 < n) {
            s.sub.push_back({a.sub[i], 0, 0, b.sub[i]});
            s.super.push_back({a.super[i], 0, 0, b.super[i]});
        }
    }
    const auto x = solve_block_tridiagonal(s);
    const auto xa = solve_tridiagonal(a);
    const auto xb = solve_tridiagonal(b);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(x[i].x == doctest::Approx(xa[i]).epsilon(1e-14));
        CHECK(x[i].y == doctest::Approx(xb[i]).epsilon(1e-14));
    }
}

TEST_CASE("block errors") {
    BlockTridiagonalSystem s;
    s.diag = {Mat2::identity(), Mat2{1, 2, 2, 4}};
    s.sub = {Mat2{}};
    s.super = {Mat2{}};
    s.rhs = {{1, 1}, {1, 1}};
    try {
        solve_block_tridiagonal(s);
        FAIL("expected a singular block");
    } catch (const SingularSystem& e) {
        CHECK(e.index() == 1);
    }
    s.rhs.pop_back();
    CHECK_THROWS_AS(solve_block_tridiagonal(s), InvalidParameter);
}

} // TEST_SUITE
