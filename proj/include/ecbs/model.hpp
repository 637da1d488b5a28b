#pragma once

// Boussinesq systems
//   V_t + U_x + (VU)_x + s1 U_xxx - s2 V_xxt = 0
//   U_t + V_x + U U_x  + s3 V_xxx - s4 U_xxt = 0
// and their closed-form wave solutions.

#include <optional>
#include <string>
#include <vector>

namespace ecbs {

struct SystemCoefficients {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double s4 = 0.0;

    /// The collocation time-stepper handles only systems without third-order space derivatives.
    bool solver_compatible() const noexcept { return s1 == 0.0 && s3 == 0.0; }

    static SystemCoefficients classical() noexcept { return {0.0, 0.0, 0.0, 1.0 / 3.0}; }
    static SystemCoefficients regularized() noexcept { return {0.0, 1.0 / 6.0, 0.0, 1.0 / 6.0}; }
};

/// theta_sq in [0, 1] fixes the depth at which U is measured; lambda and mu are modeling choices.
struct PhysicalParameters {
    double theta_sq = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
};

SystemCoefficients coefficients_from_physical(const PhysicalParameters& p);

enum class AdmissibilityCase { None, I, II, III, IV, V };

struct Interval {
    double lower;
    double upper;
    bool lower_closed;
    bool upper_closed;

    bool contains(double v) const noexcept;
};

/// Which solitary-wave existence case holds for a system, and the amplitudes V0 it allows.
struct AmplitudeConstraint {
    AdmissibilityCase which = AdmissibilityCase::None;
    std::vector<Interval> admissible; ///< union of intervals; a single point in case I

    /// Present whenever s1 - s2 + 2 s4 != 0, whether or not case I holds.
    std::optional<double> kappa;
    bool kappa_positive = false;
    bool kappa_sign_condition = false; ///< (kappa - 1/2)((s2 - s1) kappa - s2) > 0

    bool contains(double v0) const noexcept;
    std::string describe() const;
};

AmplitudeConstraint admissible_v0(const SystemCoefficients& s);

struct WaveValues {
    double u;
    double v;
};

/// sech^2 with the tails clamped to zero for |arg| > 350.
double sech_squared(double arg) noexcept;

/// Solitary wave V = V0 sech^2(w (x + x0 - cs t)), U = sign sqrt(3/(V0+3)) V0 sech^2(...).
class SolitaryWave {
public:
    /// Throws InvalidParameter for V0 <= -3, sign not +-1, or a negative width radicand.
    SolitaryWave(const SystemCoefficients& s, double v0, int sign, double x0);

    WaveValues operator()(double x, double t) const noexcept;

    double v0() const noexcept { return v0_; }
    int sign() const noexcept { return sign_; }
    double x0() const noexcept { return x0_; }
    double speed() const noexcept { return cs_; }
    double wave_width() const noexcept { return width_; }

private:
    double v0_;
    int sign_;
    double x0_;
    double cs_;
    double width_;
};

enum class SystemVariant { Classical, Regularized };

/// Traveling waves over the still state V = -1:
///   U = (1 - rho/k) cs + (cs rho / 2) sech^2((sqrt(rho)/2)(x + x0 - cs t)),  k = 6 (RBS), 3 (CBS)
struct TravelingWave {
    SystemVariant variant;
    double rho;
    double cs;
    double x0;

    WaveValues operator()(double x, double t) const;
};

WaveValues solitary_wave_eval(const SolitaryWave& w, double x, double t);
WaveValues traveling_wave_eval(const TravelingWave& w, double x, double t);

} // namespace ecbs
