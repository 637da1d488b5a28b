#include "ecbs/solver.hpp"

#include "ecbs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ecbs {
namespace {

Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

Vec2 apply(const Mat2& m, double delta, double phi) {
    return {m.a11 * delta + m.a12 * phi, m.a21 * delta + m.a22 * phi};
}

std::vector<double> fit_coefficients(const NodalWeights& w, const NodalField& field,
                                     std::size_t n_nodes) {
    if (field.values.size() != n_nodes) {
        throw InvalidParameter("initial data has " + std::to_string(field.values.size()) +
                               " nodal values, expected " + std::to_string(n_nodes));
    }
    const double a = w.alpha1;
    const double slope_to_ghost = 1.0 / w.beta1;

    TridiagonalSystem sys;
    sys.diag.assign(n_nodes, 1.0);
    sys.sub.assign(n_nodes - 1, a);
    sys.super.assign(n_nodes - 1, a);
    sys.rhs = field.values;
    // c_{-1} = c_1 + U'_0 / beta1,  c_{N+1} = c_{N-1} - U'_N / beta1
    sys.super.front() = 2.0 * a;
    sys.sub.back() = 2.0 * a;
    sys.rhs.front() -= a * field.slope_left * slope_to_ghost;
    sys.rhs.back() += a * field.slope_right * slope_to_ghost;

    const std::vector<double> interior = solve_tridiagonal(sys);
    std::vector<double> coeffs(n_nodes + 2);
    std::copy(interior.begin(), interior.end(), coeffs.begin() + 1);
    coeffs.front() = interior[1] + field.slope_left * slope_to_ghost;
    coeffs.back() = interior[n_nodes - 2] - field.slope_right * slope_to_ghost;
    return coeffs;
}

void apply_stencil(const std::vector<double>& c, const NodalWeights& w, int order,
                   std::vector<double>& out) {
    const std::size_t n_nodes = c.size() - 2;
    out.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        const double left = c[i];
        const double center = c[i + 1];
        const double right = c[i + 2];
        switch (order) {
        case 0:
            out[i] = w.alpha1 * left + center + w.alpha1 * right;
            break;
        case 1:
            out[i] = w.beta1 * left - w.beta1 * right;
            break;
        default:
            out[i] = w.gamma1 * left + w.gamma2 * center + w.gamma1 * right;
            break;
        }
    }
}

} // namespace

Grid::Grid(double a, double b, int n_cells) : a_(a), b_(b), n_(n_cells) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
        throw InvalidParameter("grid interval must satisfy a < b");
    }
    if (n_cells < 4) {
        throw InvalidParameter("grid needs at least 4 cells, got " + std::to_string(n_cells));
    }
    h_ = (b - a) / n_cells;
}

std::vector<double> Grid::nodes() const {
    std::vector<double> x(n_nodes());
    for (int m = 0; m <= n_; ++m) {
        x[static_cast<std::size_t>(m)] = node(m);
    }
    return x;
}

SplineState::SplineState(int n_cells, double t)
    : delta(static_cast<std::size_t>(n_cells) + 3, 0.0),
      phi(static_cast<std::size_t>(n_cells) + 3, 0.0),
      time(t) {}

void SplineState::reflect_ghosts() noexcept {
    const std::size_t last = delta.size() - 1;
    delta[0] = delta[2];
    phi[0] = phi[2];
    delta[last] = delta[last - 2];
    phi[last] = phi[last - 2];
}

SplineState initial_state(const Grid& grid, const NodalWeights& weights, const NodalField& u0,
                          const NodalField& v0) {
    SplineState state;
    state.delta = fit_coefficients(weights, u0, grid.n_nodes());
    state.phi = fit_coefficients(weights, v0, grid.n_nodes());
    state.time = 0.0;
    return state;
}

NodalValues reconstruct(const SplineState& state, const NodalWeights& weights, int order) {
    if (order < 0 || order > 2) {
        throw InvalidParameter("reconstruction order must be 0, 1 or 2");
    }
    NodalValues out;
    apply_stencil(state.delta, weights, order, out.u);
    apply_stencil(state.phi, weights, order, out.v);
    return out;
}

void StepContext::validate() const {
    if (!std::isfinite(dt) || dt <= 0.0) {
        throw InvalidParameter("time step must be finite and positive");
    }
    if (!system.solver_compatible()) {
        throw InvalidParameter(
            "the collocation time-stepper requires s1 = 0 and s3 = 0 (no third-order space "
            "derivatives)");
    }
}

LaggedTerms lagged_terms(const SplineState& state, const NodalWeights& w, int m) {
    const double dl = state.delta_at(m - 1);
    const double dc = state.delta_at(m);
    const double dr = state.delta_at(m + 1);
    const double pl = state.phi_at(m - 1);
    const double pc = state.phi_at(m);
    const double pr = state.phi_at(m + 1);
    return {
        w.alpha1 * dl + dc + w.alpha1 * dr,
        w.beta1 * dl - w.beta1 * dr,
        w.alpha1 * pl + pc + w.alpha1 * pr,
        w.beta1 * pl - w.beta1 * pr,
    };
}

NodeStencil node_stencil(const StepContext& ctx, const LaggedTerms& g) {
    const double alpha = ctx.weights.alpha1;
    const double beta = ctx.weights.beta1;
    const double gamma1 = ctx.weights.gamma1;
    const double gamma2 = ctx.weights.gamma2;
    const double r = 2.0 / ctx.dt;
    const double r4 = 2.0 * ctx.system.s4 / ctx.dt;
    const double r2 = 2.0 * ctx.system.s2 / ctx.dt;
    const double rk = r + g.k2;

    NodeStencil st;
    // U equation: 2U_t + V_x + (U U_x) - 2 s4 U_xxt, U U_x linearized about level n.
    st.implicit_lower.a11 = rk * alpha + g.k1 * beta - r4 * gamma1;
    st.implicit_lower.a12 = beta;
    st.implicit_center.a11 = rk - r4 * gamma2;
    st.implicit_center.a12 = 0.0;
    st.implicit_upper.a11 = rk * alpha - g.k1 * beta - r4 * gamma1;
    st.implicit_upper.a12 = -beta;

    st.explicit_lower.a11 = r * alpha - r4 * gamma1;
    st.explicit_lower.a12 = -beta;
    st.explicit_center.a11 = r - r4 * gamma2;
    st.explicit_center.a12 = 0.0;
    st.explicit_upper.a11 = st.explicit_lower.a11;
    st.explicit_upper.a12 = beta;

    // V equation: 2V_t + U_x + (V U)_x - 2 s2 V_xxt.
    st.implicit_lower.a21 = g.l2 * alpha + (1.0 + g.l1) * beta;
    st.implicit_lower.a22 = rk * alpha + g.k1 * beta - r2 * gamma1;
    st.implicit_center.a21 = g.l2;
    st.implicit_center.a22 = rk - r2 * gamma2;
    st.implicit_upper.a21 = g.l2 * alpha - (1.0 + g.l1) * beta;
    st.implicit_upper.a22 = rk * alpha - g.k1 * beta - r2 * gamma1;

    st.explicit_lower.a21 = -beta;
    st.explicit_lower.a22 = r * alpha - r2 * gamma1;
    st.explicit_center.a21 = 0.0;
    st.explicit_center.a22 = r - r2 * gamma2;
    st.explicit_upper.a21 = beta;
    st.explicit_upper.a22 = st.explicit_lower.a22;
    return st;
}

BlockTridiagonalSystem assemble_step(const SplineState& state, const StepContext& ctx) {
    const int n = state.n_cells();
    if (n < 4 || state.phi.size() != state.delta.size()) {
        throw InvalidParameter("spline state has inconsistent coefficient vectors");
    }
    const auto rows = static_cast<std::size_t>(n) + 1;

    BlockTridiagonalSystem sys;
    sys.diag.resize(rows);
    sys.sub.resize(rows - 1);
    sys.super.resize(rows - 1);
    sys.rhs.resize(rows);

    for (int m = 0; m <= n; ++m) {
        const auto i = static_cast<std::size_t>(m);
        const NodeStencil st = node_stencil(ctx, lagged_terms(state, ctx.weights, m));

        const Vec2 lower = apply(st.explicit_lower, state.delta_at(m - 1), state.phi_at(m - 1));
        const Vec2 center = apply(st.explicit_center, state.delta_at(m), state.phi_at(m));
        const Vec2 upper = apply(st.explicit_upper, state.delta_at(m + 1), state.phi_at(m + 1));
        sys.rhs[i] = {lower.x + center.x + upper.x, lower.y + center.y + upper.y};

        sys.diag[i] = st.implicit_center;
        if (m == 0) {
            sys.super[i] = st.implicit_upper + st.implicit_lower;
        } else if (m == n) {
            sys.sub[i - 1] = st.implicit_lower + st.implicit_upper;
        } else {
            sys.sub[i - 1] = st.implicit_lower;
            sys.super[i] = st.implicit_upper;
        }
    }
    return sys;
}

SplineState step(const SplineState& state, const StepContext& ctx) {
    ctx.validate();
    const std::vector<Vec2> solution = solve_block_tridiagonal(assemble_step(state, ctx));

    SplineState next(state.n_cells(), state.time + ctx.dt);
    for (std::size_t i = 0; i < solution.size(); ++i) {
        next.delta[i + 1] = solution[i].x;
        next.phi[i + 1] = solution[i].y;
    }
    next.reflect_ghosts();
    return next;
}

void validate(const Problem& p) {
    StepContext{p.dt, p.weights, p.system}.validate();
    if (!std::isfinite(p.t_end) || p.t_end < 0.0) {
        throw InvalidParameter("terminating time must be finite and non-negative");
    }
    const std::size_t n_nodes = p.grid.n_nodes();
    if (p.u0.values.size() != n_nodes || p.v0.values.size() != n_nodes) {
        throw InvalidParameter("initial data must hold N + 1 = " + std::to_string(n_nodes) +
                               " nodal values per field");
    }
    const double slack = 1e-9 * std::max(1.0, p.t_end);
    double previous = -slack;
    for (const double t : p.snapshot_times) {
        if (!(t >= previous)) {
            throw InvalidParameter("snapshot times must be sorted");
        }
        if (t < -slack || t > p.t_end + slack) {
            throw InvalidParameter("snapshot time " + std::to_string(t) + " lies outside [0, " +
                                   std::to_string(p.t_end) + "]");
        }
        previous = t;
    }
}

std::vector<Snapshot> run(const Problem& p) {
    validate(p);
    const StepContext ctx{p.dt, p.weights, p.system};
    const long n_steps = std::lround(p.t_end / p.dt);

    std::vector<long> capture;
    if (p.snapshot_times.empty()) {
        capture.push_back(n_steps);
    }
    for (const double t : p.snapshot_times) {
        capture.push_back(std::clamp(std::lround(t / p.dt), 0L, n_steps));
    }

    const std::vector<double> x = p.grid.nodes();
    auto take = [&](const SplineState& state, long k) {
        Snapshot snap;
        snap.step = k;
        snap.time = static_cast<double>(k) * p.dt;
        NodalValues values = reconstruct(state, p.weights, 0);
        snap.u = std::move(values.u);
        snap.v = std::move(values.v);
        if (p.exact) {
            const std::size_t n = x.size();
            snap.u_exact.resize(n);
            snap.v_exact.resize(n);
            snap.err_u.resize(n);
            snap.err_v.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const WaveValues e = p.exact(x[i], snap.time);
                snap.u_exact[i] = e.u;
                snap.v_exact[i] = e.v;
                snap.err_u[i] = std::fabs(e.u - snap.u[i]);
                snap.err_v[i] = std::fabs(e.v - snap.v[i]);
            }
        }
        return snap;
    };

    std::vector<Snapshot> out;
    out.reserve(capture.size());
    SplineState state = initial_state(p.grid, p.weights, p.u0, p.v0);
    std::size_t next = 0;
    for (long k = 0;; ++k) {
        if (k > 0) {
            state = step(state, ctx);
            state.time = static_cast<double>(k) * p.dt;
            for (std::size_t i = 0; i < state.delta.size(); ++i) {
                if (!std::isfinite(state.delta[i]) || !std::isfinite(state.phi[i])) {
                    throw NumericalError("non-finite spline coefficient at step " + std::to_string(k) +
                                         ", t = " + std::to_string(state.time));
                }
            }
        }
        while (next < capture.size() && capture[next] == k) {
            out.push_back(take(state, k));
            ++next;
        }
        if (k >= n_steps) {
            break;
        }
    }
    return out;
}

} // namespace ecbs
