#pragma once

#include "ecbs/solver.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ecbs {

struct LinfError {
    double value;
    std::size_t node; ///< first node attaining the maximum
};

/// max_m |exact_m - numeric_m|. Throws InvalidParameter on length mismatch.
LinfError linf_error(std::span<const double> numeric, std::span<const double> exact);

struct PeakLocation {
    double x;         ///< quadratic-refined abscissa of the maximum
    std::size_t node; ///< discrete argmax (first on ties)
    double node_x;
    double value; ///< height of the fitted parabola at x (the node value at a boundary)
};

/// Discrete maximum refined by a three-point parabola; a boundary argmax is returned as is.
PeakLocation peak_location(const Grid& grid, std::span<const double> values);

struct ErrorReport {
    double time;
    double linf_u;
    double linf_v;
    double argmax_u; ///< abscissa of the largest U error
    double argmax_v;
    std::vector<double> profile_u;
    std::vector<double> profile_v;
};

/// Requires a snapshot carrying exact values.
ErrorReport error_report(const Grid& grid, const Snapshot& snapshot);

} // namespace ecbs
