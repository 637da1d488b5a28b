#pragma once

// Exponential cubic B-splines on a uniform grid.
//
// Every coefficient is a function of the dimensionless product z = zeta * h.
// For small z the closed forms subtract nearly equal quantities
// (sinh z - z, z cosh z - sinh z, cosh z - 1), so below kSeriesSwitch each of
// these is evaluated from its power series instead.

namespace ecbs {

inline constexpr double kSeriesSwitch = 1e-2;

/// Free parameter zeta and grid spacing h of a uniform exponential spline basis.
class SplineShape {
public:
    /// Throws InvalidParameter unless both values are finite and positive.
    SplineShape(double zeta, double h);

    double zeta() const noexcept { return zeta_; }
    double h() const noexcept { return h_; }
    double z() const noexcept { return zeta_ * h_; }

private:
    double zeta_;
    double h_;
};

/// Coefficients of the piecewise definition of B_m:
///   outer pieces  b2 * ((x_{m-2} - x) - sinh(zeta (x_{m-2} - x)) / zeta)   (and mirrored)
///   inner pieces  a1 + b1 r + c1 exp(zeta r) + d1 exp(-zeta r),  r = |x - x_m|
struct BasisCoefficients {
    double a1;
    double b1;
    double b2;
    double c1;
    double d1;
};

/// Values of B_{m-1}, B_m, B_{m+1} and their derivatives at the node x_m:
///   u(x_m)   = alpha1 c_{m-1} + c_m + alpha1 c_{m+1}
///   u'(x_m)  = beta1 c_{m-1} - beta1 c_{m+1}
///   u''(x_m) = gamma1 c_{m-1} + gamma2 c_m + gamma1 c_{m+1}
struct NodalWeights {
    double alpha1;
    double beta1;
    double gamma1;
    double gamma2;

    /// zeta -> 0 limit: the polynomial cubic B-spline weights.
    static NodalWeights polynomial(double h) noexcept;
};

enum class WeightEvaluation {
    Auto,       ///< series below kSeriesSwitch, closed form above
    Series,     ///< series expansions regardless of z (accurate for z <= 1)
    ClosedForm, ///< literal closed forms at every z
};

BasisCoefficients basis_coefficients(const SplineShape& shape,
                                     WeightEvaluation mode = WeightEvaluation::Auto);

NodalWeights nodal_weights(const SplineShape& shape,
                           WeightEvaluation mode = WeightEvaluation::Auto);

/// The four non-zero pieces of B_m, by position relative to x_m.
enum class BasisPiece { OuterLeft, InnerLeft, InnerRight, OuterRight };

/// Evaluates one piece (order 0, 1 or 2) at offset = x - x_m, without
/// checking that the offset lies inside that piece's interval. Used to
/// compare one-sided limits at the knots.
double eval_basis_piece(const SplineShape& shape, BasisPiece piece, double offset, int order);

/// B_m^{(order)}(x) with knots x_k = origin + k h; zero outside [x_{m-2}, x_{m+2}].
double eval_basis(const SplineShape& shape, int knot_index, double x, int order,
                  double origin = 0.0);

/// sinh and cosh evaluated through expm1 in the manner of fdlibm, so that the
/// literal closed forms round identically on every platform with a correctly
/// behaved expm1.
double sinh_expm1(double x) noexcept;
double cosh_expm1(double x) noexcept;

} // namespace ecbs
