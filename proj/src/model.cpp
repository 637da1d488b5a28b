#include "ecbs/model.hpp"

#include "ecbs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ecbs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool nearly_equal(double a, double b) {
    return std::fabs(a - b) <= 1e-14 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

bool nearly_zero(double a) { return nearly_equal(a, 0.0); }

// V0 > -3 restricted by q = 3 / (V0 + 3) being inside (or outside) [1, r].
// q in [1, r] <=> V0 in [3/r - 3, 0] when r >= 1; empty otherwise.
std::vector<Interval> ratio_constrained(double r, bool inside) {
    const bool nonempty = r >= 1.0;
    if (inside) {
        if (!nonempty) {
            return {};
        }
        return {{3.0 / r - 3.0, 0.0, true, true}};
    }
    if (!nonempty) {
        return {{-3.0, kInf, false, false}};
    }
    return {{-3.0, 3.0 / r - 3.0, false, false}, {0.0, kInf, false, false}};
}

} // namespace

SystemCoefficients coefficients_from_physical(const PhysicalParameters& p) {
    if (!(p.theta_sq >= 0.0 && p.theta_sq <= 1.0)) {
        throw InvalidParameter("theta^2 must lie in [0, 1], got " + std::to_string(p.theta_sq));
    }
    const double upper = 0.5 * (p.theta_sq - 1.0 / 3.0);
    const double lower = 0.5 * (1.0 - p.theta_sq);
    return {upper * p.lambda, upper * (1.0 - p.lambda), lower * p.mu, lower * (1.0 - p.mu)};
}

bool Interval::contains(double v) const noexcept {
    const bool above = lower_closed ? v >= lower : v > lower;
    const bool below = upper_closed ? v <= upper : v < upper;
    return above && below;
}

bool AmplitudeConstraint::contains(double v0) const noexcept {
    for (const auto& iv : admissible) {
        if (iv.contains(v0)) {
            return true;
        }
    }
    return false;
}

std::string AmplitudeConstraint::describe() const {
    static const char* names[] = {"none", "i", "ii", "iii", "iv", "v"};
    std::ostringstream out;
    out.precision(17);
    out << "case " << names[static_cast<int>(which)];
    if (kappa) {
        out << ", kappa = " << *kappa;
    }
    if (which == AdmissibilityCase::None) {
        return out.str();
    }
    out << ", V0 in ";
    if (admissible.empty()) {
        out << "{}";
    }
    for (std::size_t i = 0; i < admissible.size(); ++i) {
        const auto& iv = admissible[i];
        if (i > 0) {
            out << " U ";
        }
        if (iv.lower == iv.upper) {
            out << "{" << iv.lower << "}";
            continue;
        }
        out << (iv.lower_closed ? "[" : "(") << iv.lower << ", " << iv.upper
            << (iv.upper_closed ? "]" : ")");
    }
    return out.str();
}

AmplitudeConstraint admissible_v0(const SystemCoefficients& s) {
    AmplitudeConstraint result;

    const double kappa_den = s.s1 - s.s2 + 2.0 * s.s4;
    if (!nearly_zero(kappa_den)) {
        const double kappa = (-s.s2 + s.s3 + 2.0 * s.s4) / kappa_den;
        result.kappa = kappa;
        result.kappa_positive = kappa > 0.0;
        result.kappa_sign_condition = (kappa - 0.5) * ((s.s2 - s.s1) * kappa - s.s2) > 0.0;
        if (result.kappa_positive && result.kappa_sign_condition) {
            const double v0 = 3.0 * (1.0 - 2.0 * kappa) / (2.0 * kappa);
            result.which = AdmissibilityCase::I;
            result.admissible = {{v0, v0, true, true}};
            return result;
        }
    }

    const bool equal_123 = nearly_equal(s.s1, s.s2) && nearly_equal(s.s2, s.s3);
    if (equal_123 && nearly_zero(s.s4)) {
        if (s.s1 > 0.0) {
            result.which = AdmissibilityCase::II;
            result.admissible = {{0.0, kInf, false, false}};
            return result;
        }
        if (s.s1 < 0.0) {
            result.which = AdmissibilityCase::III;
            result.admissible = {{-3.0, 0.0, true, false}};
            return result;
        }
    }

    if (nearly_zero(s.s1 - s.s2 + s.s4) && nearly_equal(s.s1, s.s3)) {
        if (s.s4 > 0.0) {
            result.which = AdmissibilityCase::IV;
            result.admissible = ratio_constrained(s.s2 / s.s4, false);
            return result;
        }
        if (s.s4 < 0.0) {
            result.which = AdmissibilityCase::V;
            result.admissible = ratio_constrained(s.s2 / s.s4, true);
            return result;
        }
    }
    return result;
}

double sech_squared(double arg) noexcept {
    if (std::fabs(arg) > 350.0) {
        return 0.0;
    }
    const double sech = 1.0 / std::cosh(arg);
    return sech * sech;
}

SolitaryWave::SolitaryWave(const SystemCoefficients& s, double v0, int sign, double x0)
    : v0_(v0), sign_(sign), x0_(x0) {
    if (!(v0 > -3.0)) {
        throw InvalidParameter("solitary-wave amplitude V0 must exceed -3, got " +
                               std::to_string(v0));
    }
    if (sign != 1 && sign != -1) {
        throw InvalidParameter("solitary-wave branch sign must be +1 or -1");
    }
    cs_ = (3.0 + 2.0 * v0) / (sign * std::sqrt(3.0 * (3.0 + v0)));
    const double denom = 3.0 * (s.s1 - s.s2) + 2.0 * s.s2 * (v0 + 3.0);
    const double radicand = v0 == 0.0 ? 0.0 : 2.0 * v0 / denom;
    if (!(radicand >= 0.0) || !std::isfinite(radicand)) {
        throw InvalidParameter("solitary-wave width radicand is not a non-negative real number");
    }
    width_ = 0.5 * std::sqrt(radicand);
}

WaveValues SolitaryWave::operator()(double x, double t) const noexcept {
    const double profile = sech_squared(width_ * (x + x0_ - cs_ * t));
    return {sign_ * std::sqrt(3.0 / (v0_ + 3.0)) * v0_ * profile, v0_ * profile};
}

WaveValues TravelingWave::operator()(double x, double t) const {
    if (!(rho >= 0.0)) {
        throw InvalidParameter("traveling-wave rho must be non-negative");
    }
    const double background = variant == SystemVariant::Regularized ? 1.0 - rho / 6.0
                                                                     : 1.0 - rho / 3.0;
    const double profile = sech_squared(0.5 * std::sqrt(rho) * (x + x0 - cs * t));
    return {background * cs + 0.5 * cs * rho * profile, -1.0};
}

WaveValues solitary_wave_eval(const SolitaryWave& w, double x, double t) { return w(x, t); }

WaveValues traveling_wave_eval(const TravelingWave& w, double x, double t) { return w(x, t); }

} // namespace ecbs
