#include "ecbs/linalg.hpp"

#include "ecbs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ecbs {
namespace {

constexpr double kScalarPivotTolerance = 1e-14;
constexpr double kBlockPivotTolerance = 1e-30;

void check_sizes(std::size_t n, std::size_t sub, std::size_t super, std::size_t rhs) {
    if (n == 0) {
        throw InvalidParameter("tridiagonal system must have at least one row");
    }
    if (sub != n - 1 || super != n - 1 || rhs != n) {
        throw InvalidParameter("inconsistent tridiagonal system sizes: diag " + std::to_string(n) +
                               ", sub " + std::to_string(sub) + ", super " +
                               std::to_string(super) + ", rhs " + std::to_string(rhs));
    }
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

Vec2 operator*(const Mat2& a, const Vec2& v) {
    return {a.a11 * v.x + a.a12 * v.y, a.a21 * v.x + a.a22 * v.y};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }

Mat2 inverse(const Mat2& p, std::size_t index) {
    const double scale =
        std::max({std::fabs(p.a11), std::fabs(p.a12), std::fabs(p.a21), std::fabs(p.a22)});
    const double det = p.det();
    if (scale == 0.0 || !(std::fabs(det) > kBlockPivotTolerance * scale * scale)) {
        throw SingularSystem("singular 2x2 pivot block in block-tridiagonal solve", index);
    }
    const double inv = 1.0 / det;
    return {p.a22 * inv, -p.a12 * inv, -p.a21 * inv, p.a11 * inv};
}

} // namespace

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
    const std::size_t n = sys.diag.size();
    check_sizes(n, sys.sub.size(), sys.super.size(), sys.rhs.size());

    std::vector<double> c(n, 0.0);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lower = i > 0 ? sys.sub[i - 1] : 0.0;
        const double upper = i + 1 < n ? sys.super[i] : 0.0;
        const double pivot = sys.diag[i] - (i > 0 ? lower * c[i - 1] : 0.0);
        const double scale = std::max({std::fabs(sys.diag[i]), std::fabs(lower), std::fabs(upper)});
        if (scale == 0.0 || !(std::fabs(pivot) > kScalarPivotTolerance * scale)) {
            throw SingularSystem("zero pivot in tridiagonal solve", i);
        }
        c[i] = upper / pivot;
        x[i] = (sys.rhs[i] - (i > 0 ? lower * x[i - 1] : 0.0)) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= c[i] * x[i + 1];
    }
    return x;
}

std::vector<Vec2> solve_block_tridiagonal(const BlockTridiagonalSystem& sys) {
    const std::size_t n = sys.diag.size();
    check_sizes(n, sys.sub.size(), sys.super.size(), sys.rhs.size());

    std::vector<Mat2> c(n);
    std::vector<Vec2> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        Mat2 pivot = sys.diag[i];
        Vec2 r = sys.rhs[i];
        if (i > 0) {
            pivot = pivot - sys.sub[i - 1] * c[i - 1];
            r = r - sys.sub[i - 1] * x[i - 1];
        }
        const Mat2 inv = inverse(pivot, i);
        if (i + 1 < n) {
            c[i] = inv * sys.super[i];
        }
        x[i] = inv * r;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = x[i] - c[i] * x[i + 1];
    }
    return x;
}

} // namespace ecbs
