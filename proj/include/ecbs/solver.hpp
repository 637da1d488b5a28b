#pragma once

// Exponential cubic B-spline collocation for Boussinesq systems with s1 = s3 = 0:
// Crank-Nicolson in time, one Rubin-Graves linearization per step, homogeneous
// Neumann ends imposed through reflected ghost coefficients.
//
// Unknowns are interleaved per node as (delta_m, phi_m): delta expands U and phi
// expands V. Each node contributes two collocation rows, the U equation first and
// the V equation second, so the step matrix is block tridiagonal with 2x2 blocks.

#include "ecbs/expspline.hpp"
#include "ecbs/linalg.hpp"
#include "ecbs/model.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace ecbs {

/// Uniform partition x_m = a + m h, m = 0..N, of [a, b].
class Grid {
public:
    /// Throws InvalidParameter unless b > a and N >= 4.
    Grid(double a, double b, int n_cells);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int n_cells() const noexcept { return n_; }
    std::size_t n_nodes() const noexcept { return static_cast<std::size_t>(n_) + 1; }
    double h() const noexcept { return h_; }
    double node(int m) const noexcept { return m == n_ ? b_ : a_ + m * h_; }
    std::vector<double> nodes() const;

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

/// Spline coefficients indexed -1..N+1; storage index is m + 1.
struct SplineState {
    std::vector<double> delta;
    std::vector<double> phi;
    double time = 0.0;

    SplineState() = default;
    explicit SplineState(int n_cells, double t = 0.0);

    int n_cells() const noexcept { return static_cast<int>(delta.size()) - 3; }
    double delta_at(int m) const { return delta[static_cast<std::size_t>(m + 1)]; }
    double phi_at(int m) const { return phi[static_cast<std::size_t>(m + 1)]; }

    /// delta_{-1} = delta_1, delta_{N+1} = delta_{N-1}, and the same for phi.
    void reflect_ghosts() noexcept;
};

/// Nodal values at x_0..x_N plus end slopes used to eliminate the ghost coefficients.
struct NodalField {
    std::vector<double> values;
    double slope_left = 0.0;
    double slope_right = 0.0;
};

/// Fits the initial coefficients by two tridiagonal collocation solves.
SplineState initial_state(const Grid& grid, const NodalWeights& weights, const NodalField& u0,
                          const NodalField& v0);

struct NodalValues {
    std::vector<double> u;
    std::vector<double> v;
};

/// Nodal values (order 0), slopes (1) or second derivatives (2) of U and V.
NodalValues reconstruct(const SplineState& state, const NodalWeights& weights, int order);

struct StepContext {
    double dt;
    NodalWeights weights;
    SystemCoefficients system;

    /// Throws InvalidParameter for non-positive dt or s1, s3 != 0.
    void validate() const;
};

/// Level-n quantities frozen by the linearization at one node.
struct LaggedTerms {
    double k1; ///< U
    double k2; ///< U_x
    double l1; ///< V
    double l2; ///< V_x
};

LaggedTerms lagged_terms(const SplineState& state, const NodalWeights& weights, int m);

/// The 2x2 blocks coupling node m to coefficient columns m-1, m, m+1.
/// Block rows: U equation, V equation. Block columns: delta, phi.
struct NodeStencil {
    Mat2 implicit_lower;
    Mat2 implicit_center;
    Mat2 implicit_upper;
    Mat2 explicit_lower;
    Mat2 explicit_center;
    Mat2 explicit_upper;
};

NodeStencil node_stencil(const StepContext& ctx, const LaggedTerms& lagged);

/// Block system for level n+1 over nodes 0..N, ghost columns folded into columns 1 and N-1.
BlockTridiagonalSystem assemble_step(const SplineState& state, const StepContext& ctx);

/// One linearized Crank-Nicolson step.
SplineState step(const SplineState& state, const StepContext& ctx);

using ExactSolution = std::function<WaveValues(double x, double t)>;

struct Snapshot {
    double time = 0.0;
    long step = 0;
    std::vector<double> u;
    std::vector<double> v;
    // Filled only when the problem carries an exact solution.
    std::vector<double> u_exact;
    std::vector<double> v_exact;
    std::vector<double> err_u;
    std::vector<double> err_v;

    bool has_exact() const noexcept { return !u_exact.empty(); }
};

struct Problem {
    Grid grid;
    SystemCoefficients system;
    NodalWeights weights;
    double dt;
    double t_end;
    NodalField u0;
    NodalField v0;
    /// Requested output times; each maps to the completed step nearest to it.
    /// Empty means a single snapshot at t_end.
    std::vector<double> snapshot_times;
    ExactSolution exact;
};

/// Throws InvalidParameter on an inconsistent problem before any stepping.
void validate(const Problem& problem);

std::vector<Snapshot> run(const Problem& problem);

} // namespace ecbs
