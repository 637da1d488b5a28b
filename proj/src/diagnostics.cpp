#include "ecbs/diagnostics.hpp"

#include "ecbs/errors.hpp"

#include <cmath>
#include <string>

namespace ecbs {

LinfError linf_error(std::span<const double> numeric, std::span<const double> exact) {
    if (numeric.size() != exact.size()) {
        throw InvalidParameter("linf_error: length mismatch (" + std::to_string(numeric.size()) +
                               " vs " + std::to_string(exact.size()) + ")");
    }
    LinfError out{0.0, 0};
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        const double e = std::fabs(exact[i] - numeric[i]);
        if (e > out.value) {
            out = {e, i};
        }
    }
    return out;
}

PeakLocation peak_location(const Grid& grid, std::span<const double> values) {
    if (values.size() != grid.n_nodes()) {
        throw InvalidParameter("peak_location: expected N + 1 nodal values");
    }
    std::size_t k = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[k]) {
            k = i;
        }
    }
    const double xk = grid.node(static_cast<int>(k));
    PeakLocation out{xk, k, xk, values[k]};
    if (k == 0 || k + 1 == values.size()) {
        return out;
    }
    const double left = values[k - 1];
    const double center = values[k];
    const double right = values[k + 1];
    const double curvature = left - 2.0 * center + right;
    if (curvature >= 0.0) {
        return out;
    }
    const double shift = 0.5 * (left - right) / curvature;
    out.x = xk + shift * grid.h();
    out.value = center - 0.25 * (left - right) * shift;
    return out;
}

ErrorReport error_report(const Grid& grid, const Snapshot& snap) {
    if (!snap.has_exact()) {
        throw InvalidParameter("error report needs a snapshot with exact values");
    }
    const LinfError eu = linf_error(snap.u, snap.u_exact);
    const LinfError ev = linf_error(snap.v, snap.v_exact);
    return {
        snap.time,
        eu.value,
        ev.value,
        grid.node(static_cast<int>(eu.node)),
        grid.node(static_cast<int>(ev.node)),
        snap.err_u,
        snap.err_v,
    };
}

} // namespace ecbs
