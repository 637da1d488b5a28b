#include "ecbs/expspline.hpp"

#include "ecbs/errors.hpp"

#include <cmath>
#include <string>

namespace ecbs {
namespace {

// Beyond this z the hyperbolic functions overflow a double.
constexpr double kMaxZ = 700.0;
constexpr int kSeriesTerms = 12;

// sum_{k>=0} w^k / (2k + first)!   (truncated; exact enough for w <= 1)
double factorial_series(double w, int first) {
    double term = 1.0;
    for (int n = 2; n <= first; ++n) {
        term /= n;
    }
    double sum = term;
    for (int k = 1; k < kSeriesTerms; ++k) {
        const int n = 2 * k + first;
        term *= w / (static_cast<double>(n - 1) * n);
        sum += term;
    }
    return sum;
}

bool use_series(double y, WeightEvaluation mode) {
    switch (mode) {
    case WeightEvaluation::Series:
        return true;
    case WeightEvaluation::ClosedForm:
        return false;
    case WeightEvaluation::Auto:
        break;
    }
    return y < kSeriesSwitch;
}

// sinh(y) / y
double sinh_over(double y, WeightEvaluation mode = WeightEvaluation::Auto) {
    if (use_series(y, mode)) {
        return factorial_series(y * y, 1);
    }
    return sinh_expm1(y) / y;
}

// (cosh(y) - 1) / y^2
double cosh_minus_one_over(double y, WeightEvaluation mode = WeightEvaluation::Auto) {
    if (use_series(y, mode)) {
        return factorial_series(y * y, 2);
    }
    return (cosh_expm1(y) - 1.0) / (y * y);
}

// (sinh(y) - y) / y^3
double sinh_minus_arg_over(double y, WeightEvaluation mode = WeightEvaluation::Auto) {
    if (use_series(y, mode)) {
        return factorial_series(y * y, 3);
    }
    return (sinh_expm1(y) - y) / (y * y * y);
}

// (y cosh(y) - sinh(y)) / y^3 = sum_k (2k + 2) y^{2k} / (2k + 3)!
double denominator_over(double y, WeightEvaluation mode = WeightEvaluation::Auto) {
    if (use_series(y, mode)) {
        const double w = y * y;
        double term = 1.0 / 6.0;
        double sum = 2.0 * term;
        for (int k = 1; k < kSeriesTerms; ++k) {
            const int n = 2 * k + 3;
            term *= w / (static_cast<double>(n - 1) * n);
            sum += (2.0 * k + 2.0) * term;
        }
        return sum;
    }
    return (y * cosh_expm1(y) - sinh_expm1(y)) / (y * y * y);
}

} // namespace

SplineShape::SplineShape(double zeta, double h) : zeta_(zeta), h_(h) {
    if (!std::isfinite(zeta) || zeta <= 0.0) {
        throw InvalidParameter("spline parameter zeta must be finite and positive, got " +
                               std::to_string(zeta));
    }
    if (!std::isfinite(h) || h <= 0.0) {
        throw InvalidParameter("grid spacing h must be finite and positive, got " +
                               std::to_string(h));
    }
    if (zeta * h > kMaxZ) {
        throw InvalidParameter("zeta * h = " + std::to_string(zeta * h) +
                               " overflows the hyperbolic terms");
    }
}

NodalWeights NodalWeights::polynomial(double h) noexcept {
    const double g = 1.5 / (h * h);
    return {0.25, -0.75 / h, g, -2.0 * g};
}

double sinh_expm1(double x) noexcept {
    const double ax = std::fabs(x);
    double r;
    if (ax < 0x1p-28) {
        r = ax;
    } else if (ax < 22.0) {
        const double t = std::expm1(ax);
        r = ax < 1.0 ? 0.5 * (2.0 * t - t * t / (t + 1.0)) : 0.5 * (t + t / (t + 1.0));
    } else {
        r = 0.5 * std::exp(ax);
    }
    return std::copysign(r, x);
}

double cosh_expm1(double x) noexcept {
    const double ax = std::fabs(x);
    if (ax < 0.5 * std::log(2.0)) {
        const double t = std::expm1(ax);
        const double w = 1.0 + t;
        if (ax < 0x1p-55) {
            return w;
        }
        return 1.0 + (t * t) / (w + w);
    }
    if (ax < 22.0) {
        const double t = std::exp(ax);
        return 0.5 * t + 0.5 / t;
    }
    return 0.5 * std::exp(ax);
}

BasisCoefficients basis_coefficients(const SplineShape& shape, WeightEvaluation mode) {
    const double zeta = shape.zeta();
    const double z = shape.z();
    const double c = cosh_expm1(z);

    if (!use_series(z, mode)) {
        const double s = sinh_expm1(z);
        const double d = z * c - s;
        const double ep = std::exp(z);
        const double em = std::exp(-z);
        return {
            z * c / d,
            0.5 * zeta * (c * (c - 1.0) + s * s) / (d * (1.0 - c)),
            zeta / (2.0 * d),
            0.25 * (em * (1.0 - c) + s * (em - 1.0)) / (d * (1.0 - c)),
            0.25 * (ep * (c - 1.0) + s * (ep - 1.0)) / (d * (1.0 - c)),
        };
    }

    // z cosh z - sinh z = z^3 E(z); the numerators simplify to cancellation-free forms.
    const double e = denominator_over(z, mode);
    const double d = z * z * z * e;
    return {
        c / (z * z * e),
        -zeta * (2.0 * c + 1.0) / (2.0 * d),
        zeta / (2.0 * d),
        (2.0 * std::exp(-z) + 1.0) / (4.0 * d),
        -(2.0 * std::exp(z) + 1.0) / (4.0 * d),
    };
}

NodalWeights nodal_weights(const SplineShape& shape, WeightEvaluation mode) {
    const double zeta = shape.zeta();
    const double h = shape.h();
    const double z = shape.z();

    if (!use_series(z, mode)) {
        const double s = sinh_expm1(z);
        const double c = cosh_expm1(z);
        const double d = z * c - s;
        const double zeta_sq = zeta * zeta;
        return {
            (s - z) / (2.0 * d),
            zeta * (1.0 - c) / (2.0 * d),
            zeta_sq * s / (2.0 * d),
            -zeta_sq * s / d,
        };
    }

    const double twice_e = 2.0 * denominator_over(z, mode);
    const double gamma1 = factorial_series(z * z, 1) / twice_e / (h * h);
    return {
        factorial_series(z * z, 3) / twice_e,
        -factorial_series(z * z, 2) / twice_e / h,
        gamma1,
        -2.0 * gamma1,
    };
}

double eval_basis_piece(const SplineShape& shape, BasisPiece piece, double offset, int order) {
    if (order < 0 || order > 2) {
        throw InvalidParameter("basis derivative order must be 0, 1 or 2, got " +
                               std::to_string(order));
    }
    const double zeta = shape.zeta();
    const double h = shape.h();
    const double z = shape.z();
    const double twice_e = 2.0 * denominator_over(z);

    if (piece == BasisPiece::InnerLeft || piece == BasisPiece::InnerRight) {
        const double sign = piece == BasisPiece::InnerRight ? 1.0 : -1.0;
        const double r = sign * offset;
        const double y = zeta * r;
        const double q = r / h;
        const double tension = 2.0 * cosh_expm1(z) + 1.0;
        const double sz = sinh_over(z);
        switch (order) {
        case 0:
            return 1.0 - 2.0 * q * q * sz * cosh_minus_one_over(y) / twice_e +
                   tension * q * q * q * sinh_minus_arg_over(y) / twice_e;
        case 1:
            return sign * (-2.0 * q / h * sz * sinh_over(y) / twice_e +
                           tension * q * q / h * cosh_minus_one_over(y) / twice_e);
        default:
            return -2.0 * sz * cosh_expm1(y) / (h * h * twice_e) +
                   tension * q / (h * h) * sinh_over(y) / twice_e;
        }
    }

    // Outer pieces depend on the distance u to the end of the support.
    const double sign = piece == BasisPiece::OuterLeft ? 1.0 : -1.0;
    const double u = 2.0 * h + sign * offset;
    const double y = zeta * u;
    const double q = u / h;
    switch (order) {
    case 0:
        return q * q * q * sinh_minus_arg_over(y) / twice_e;
    case 1:
        return sign * q * q / h * cosh_minus_one_over(y) / twice_e;
    default:
        return q / (h * h) * sinh_over(y) / twice_e;
    }
}

double eval_basis(const SplineShape& shape, int knot_index, double x, int order, double origin) {
    if (order < 0 || order > 2) {
        throw InvalidParameter("basis derivative order must be 0, 1 or 2, got " +
                               std::to_string(order));
    }
    const double h = shape.h();
    const double offset = x - (origin + knot_index * h);
    if (!(std::fabs(offset) < 2.0 * h)) {
        return 0.0;
    }
    BasisPiece piece;
    if (offset < -h) {
        piece = BasisPiece::OuterLeft;
    } else if (offset < 0.0) {
        piece = BasisPiece::InnerLeft;
    } else if (offset <= h) {
        piece = BasisPiece::InnerRight;
    } else {
        piece = BasisPiece::OuterRight;
    }
    return eval_basis_piece(shape, piece, offset, order);
}

} // namespace ecbs
