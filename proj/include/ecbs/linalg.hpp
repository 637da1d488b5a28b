#pragma once

// Direct O(n) solvers without pivoting for tridiagonal and 2x2 block-tridiagonal systems.

#include <cstddef>
#include <vector>

namespace ecbs {

/// Row i reads sub[i-1] x[i-1] + diag[i] x[i] + super[i] x[i+1] = rhs[i].
struct TridiagonalSystem {
    std::vector<double> sub;   // n - 1
    std::vector<double> diag;  // n
    std::vector<double> super; // n - 1
    std::vector<double> rhs;   // n
};

/// Thomas algorithm. Throws SingularSystem on a negligible pivot, InvalidParameter on bad sizes.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Row-major 2x2 block.
struct Mat2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;

    static constexpr Mat2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }

    double det() const noexcept { return a11 * a22 - a12 * a21; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

struct BlockTridiagonalSystem {
    std::vector<Mat2> sub;   // n - 1
    std::vector<Mat2> diag;  // n
    std::vector<Mat2> super; // n - 1
    std::vector<Vec2> rhs;   // n
};

/// Block Thomas algorithm with explicit 2x2 inverses.
std::vector<Vec2> solve_block_tridiagonal(const BlockTridiagonalSystem& sys);

} // namespace ecbs
