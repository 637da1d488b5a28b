#include "ecbs/errors.hpp"
#include "ecbs/experiment.hpp"
#include "ecbs/solver.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ecbs;

namespace {

NodalField sample(const Grid& grid, double (*f)(double)) {
    NodalField out;
    for (const double x : grid.nodes()) {
        out.values.push_back(f(x));
    }
    return out;
}

NodalField constant(const Grid& grid, double c) {
    NodalField out;
    out.values.assign(grid.n_nodes(), c);
    return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::fabs(a[i] - b[i]));
    }
    return m;
}

} // namespace

TEST_SUITE("solver") {

TEST_CASE("grid validation and nodes") {
    CHECK_THROWS_AS(Grid(0.0, 1.0, 3), InvalidParameter);
    CHECK_THROWS_AS(Grid(1.0, 1.0, 10), InvalidParameter);
    const Grid g(-20.0, 30.0, 1000);
    CHECK(g.h() == doctest::Approx(0.05));
    CHECK(g.n_nodes() == 1001);
    CHECK(g.node(0) == -20.0);
    CHECK(g.node(1000) == 30.0);
}

TEST_CASE("constant initial data") {
    const Grid g(0.0, 1.0, 20);
    const NodalWeights w = nodal_weights(SplineShape(1.0, g.h()));
    const SplineState s = initial_state(g, w, constant(g, 0.8), constant(g, -1.0));
    for (int m = -1; m <= g.n_cells() + 1; ++m) {
        CHECK(s.delta_at(m) == doctest::Approx(0.8 / (1 + 2 * w.alpha1)).epsilon(1e-15));
        CHECK(s.phi_at(m) == doctest::Approx(-1.0 / (1 + 2 * w.alpha1)).epsilon(1e-15));
    }
    CHECK(s.delta_at(-1) == s.delta_at(1));
    CHECK(s.phi_at(g.n_cells() + 1) == s.phi_at(g.n_cells() - 1));

    const NodalValues d1 = reconstruct(s, w, 1);
    const NodalValues d2 = reconstruct(s, w, 2);
    for (std::size_t i = 0; i < g.n_nodes(); ++i) {
        CHECK(std::fabs(d1.u[i]) < 1e-13);
        CHECK(std::fabs(d2.v[i]) < 1e-9);
    }
}

TEST_CASE("single spline reconstructs to (alpha1, 1, alpha1)") {
    const Grid g(0.0, 1.0, 10);
    const NodalWeights w = nodal_weights(SplineShape(2.0, g.h()));
    SplineState s(g.n_cells());
    s.delta[5 + 1] = 1.0;
    const NodalValues v = reconstruct(s, w, 0);
    CHECK(v.u[4] == w.alpha1);
    CHECK(v.u[5] == 1.0);
    CHECK(v.u[6] == w.alpha1);
    CHECK(v.u[3] == 0.0);
    CHECK_THROWS_AS(reconstruct(s, w, 3), InvalidParameter);
}

TEST_CASE("initial fit round trip for the sech^2 pulse") {
    const Grid g(-20.0, 30.0, 1000);
    const PulsePreset pulse = PulsePreset::regularized();
    for (const double zeta : {0.0000058339, 1.0, 20.0}) {
        const NodalWeights w = nodal_weights(SplineShape(zeta, g.h()));
        NodalField u;
        for (const double x : g.nodes()) {
            u.values.push_back(pulse(x, 0.0).u);
        }
        u.slope_left = pulse.slope(g.a(), 0.0);
        u.slope_right = pulse.slope(g.b(), 0.0);
        const NodalField v = sample(g, [](double x) { return std::cos(x / 7.0); });
        const SplineState s = initial_state(g, w, u, v);
        const NodalValues back = reconstruct(s, w, 0);
        CHECK(max_abs_diff(back.u, u.values) < 1e-10);
        CHECK(max_abs_diff(back.v, v.values) < 1e-10);
        const NodalValues slopes = reconstruct(s, w, 1);
        CHECK(slopes.u.front() == doctest::Approx(u.slope_left).epsilon(1e-9));
        CHECK(slopes.v.back() == doctest::Approx(0.0));
    }
}

TEST_CASE("lagged terms on the flat state") {
    const Grid g(0.0, 1.0, 10);
    const NodalWeights w = nodal_weights(SplineShape(1.0, g.h()));
    const SplineState s = initial_state(g, w, constant(g, 0.0), constant(g, -1.0));
    for (int m = 0; m <= g.n_cells(); ++m) {
        const LaggedTerms t = lagged_terms(s, w, m);
        CHECK(t.k1 == 0.0);
        CHECK(t.k2 == 0.0);
        CHECK(t.l1 == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(std::fabs(t.l2) < 1e-13 * std::fabs(w.beta1));
        const NodeStencil st = node_stencil({0.1, w, SystemCoefficients::regularized()}, t);
        CHECK(st.implicit_center.a12 == 0.0);
        CHECK(st.explicit_center.a12 == 0.0);
    }
}

TEST_CASE("time-step scaling of the stencil") {
    const NodalWeights w = nodal_weights(SplineShape(1.0, 0.05));
    const SystemCoefficients sys = SystemCoefficients::regularized();
    const LaggedTerms g{0.3, -0.2, -0.9, 0.1};
    for (const double dt : {0.5, 0.05, 0.005}) {
        const NodeStencil st = node_stencil({dt, w, sys}, g);
        CHECK(st.explicit_lower.a11 * dt / 2 == doctest::Approx(w.alpha1 - sys.s4 * w.gamma1));
        CHECK(st.explicit_center.a22 * dt / 2 == doctest::Approx(1.0 - sys.s2 * w.gamma2));
        // the implicit and explicit parts differ only by the linearized and flux terms
        CHECK(st.implicit_lower.a11 - st.explicit_lower.a11 == doctest::Approx(g.k2 * w.alpha1 + g.k1 * w.beta1));
        CHECK(st.implicit_upper.a21 == doctest::Approx(g.l2 * w.alpha1 - (1 + g.l1) * w.beta1));
    }
}

TEST_CASE("assembled system has N + 1 block rows with folded ghosts") {
    const Grid g(0.0, 1.0, 12);
    const NodalWeights w = nodal_weights(SplineShape(1.0, g.h()));
    const NodalField u = sample(g, [](double x) { return std::exp(-x * x); });
    const SplineState s = initial_state(g, w, u, constant(g, -1.0));
    const StepContext ctx{0.01, w, SystemCoefficients::classical()};
    const BlockTridiagonalSystem sys = assemble_step(s, ctx);
    CHECK(sys.diag.size() == 13);
    CHECK(sys.sub.size() == 12);
    CHECK(sys.super.size() == 12);
    const NodeStencil first = node_stencil(ctx, lagged_terms(s, w, 0));
    CHECK(sys.super.front().a11 == first.implicit_upper.a11 + first.implicit_lower.a11);
    CHECK(sys.super.front().a22 == first.implicit_upper.a22 + first.implicit_lower.a22);
}

TEST_CASE("lagged terms use the same arithmetic as reconstruction") {
    const Grid g(-5.0, 5.0, 40);
    const NodalWeights w = nodal_weights(SplineShape(0.7, g.h()));
    const NodalField u = sample(g, [](double x) { return 1.0 / std::cosh(x); });
    const NodalField v = sample(g, [](double x) { return std::sin(x) - 1.0; });
    const SplineState s = initial_state(g, w, u, v);
    const NodalValues v0 = reconstruct(s, w, 0);
    const NodalValues v1 = reconstruct(s, w, 1);
    for (int m = 0; m <= g.n_cells(); ++m) {
        const auto i = static_cast<std::size_t>(m);
        const LaggedTerms t = lagged_terms(s, w, m);
        CHECK(t.k1 == v0.u[i]);
        CHECK(t.k2 == v1.u[i]);
        CHECK(t.l1 == v0.v[i]);
        CHECK(t.l2 == v1.v[i]);
    }
}

TEST_CASE("still water is a fixed point") {
    for (const double zeta : {1e-6, 1.0, 30.0}) {
        for (const double dt : {0.5, 0.005}) {
            for (const auto sys : {SystemCoefficients::regularized(), SystemCoefficients::classical()}) {
                const Grid g(-20.0, 30.0, 200);
                const NodalWeights w = nodal_weights(SplineShape(zeta, g.h()));
                SplineState s = initial_state(g, w, constant(g, 0.0), constant(g, -1.0));
                const StepContext ctx{dt, w, sys};
                double worst = 0.0;
                for (int k = 0; k < 100; ++k) {
                    const SplineState next = step(s, ctx);
                    worst = std::max(worst, max_abs_diff(next.delta, s.delta));
                    worst = std::max(worst, max_abs_diff(next.phi, s.phi));
                    s = next;
                }
                CHECK(worst < 1e-12);
            }
        }
    }
}

TEST_CASE("ghost coefficients stay reflected after every step") {
    const Grid g(-20.0, 30.0, 200);
    const NodalWeights w = nodal_weights(SplineShape(1.0, g.h()));
    const PulsePreset pulse = PulsePreset::regularized();
    NodalField u;
    for (const double x : g.nodes()) {
        u.values.push_back(pulse(x, 0.0).u);
    }
    SplineState s = initial_state(g, w, u, constant(g, -1.0));
    const StepContext ctx{0.05, w, SystemCoefficients::regularized()};
    for (int k = 0; k < 20; ++k) {
        s = step(s, ctx);
        const int n = s.n_cells();
        CHECK(s.delta_at(-1) == s.delta_at(1));
        CHECK(s.phi_at(-1) == s.phi_at(1));
        CHECK(s.delta_at(n + 1) == s.delta_at(n - 1));
        CHECK(s.phi_at(n + 1) == s.phi_at(n - 1));
    }
}

TEST_CASE("zeta -> 0 runs track the polynomial cubic spline") {
    const Grid g(-20.0, 30.0, 1000);
    const NodalWeights tiny = nodal_weights(SplineShape(1e-8, g.h()), WeightEvaluation::Series);
    const NodalWeights poly = NodalWeights::polynomial(g.h());
    const PulsePreset pulse = PulsePreset::regularized();
    NodalField u;
    for (const double x : g.nodes()) {
        u.values.push_back(pulse(x, 0.0).u);
    }
    SplineState a = initial_state(g, tiny, u, constant(g, -1.0));
    SplineState b = initial_state(g, poly, u, constant(g, -1.0));
    const SystemCoefficients sys = SystemCoefficients::regularized();
    for (int k = 0; k < 10; ++k) {
        a = step(a, {0.005, tiny, sys});
        b = step(b, {0.005, poly, sys});
        const NodalValues va = reconstruct(a, tiny, 0);
        const NodalValues vb = reconstruct(b, poly, 0);
        CHECK(max_abs_diff(va.u, vb.u) < 1e-8);
        CHECK(max_abs_diff(va.v, vb.v) < 1e-8);
    }
}

TEST_CASE("step rejects systems with third-order space derivatives") {
    const Grid g(0.0, 1.0, 10);
    const NodalWeights w = nodal_weights(SplineShape(1.0, g.h()));
    const SplineState s = initial_state(g, w, constant(g, 0.0), constant(g, -1.0));
    CHECK_THROWS_AS(step(s, {0.1, w, {0.1, 0.0, 0.0, 0.1}}), InvalidParameter);
    CHECK_THROWS_AS(step(s, {0.1, w, {0.0, 0.0, 0.1, 0.1}}), InvalidParameter);
    CHECK_THROWS_AS(step(s, {0.0, w, SystemCoefficients::classical()}), InvalidParameter);
}

TEST_CASE("run: snapshots, t_end = 0 and validation") {
    ExperimentConfig cfg = table_config(SystemPreset::Regularized, 0.05, 1.0, WeightEvaluation::Auto);
    cfg.t_end = 0.0;
    cfg.snapshot_times = {};
    Problem p = build_problem(cfg);
    const auto zero = run(p);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].step == 0);
    CHECK(zero[0].time == 0.0);
    const SplineState fitted = initial_state(p.grid, p.weights, p.u0, p.v0);
    const NodalValues nv = reconstruct(fitted, p.weights, 0);
    CHECK(zero[0].u == nv.u);
    CHECK(zero[0].v == nv.v);

    p.t_end = 1.0;
    p.snapshot_times = {0.0, 0.5, 0.52, 1.0};
    const auto snaps = run(p);
    REQUIRE(snaps.size() == 4);
    CHECK(snaps[1].step == 10);
    CHECK(snaps[2].step == 10); // nearest completed step
    CHECK(snaps[3].step == 20);
    CHECK(snaps[3].time == doctest::Approx(1.0));
    CHECK(snaps[3].has_exact());

    p.snapshot_times = {0.5, 0.2};
    CHECK_THROWS_AS(run(p), InvalidParameter);
    p.snapshot_times = {2.0};
    CHECK_THROWS_AS(run(p), InvalidParameter);
    p.snapshot_times = {};
    p.u0.values.pop_back();
    CHECK_THROWS_AS(run(p), InvalidParameter);
}

TEST_CASE("blow-up is reported as a numerical error") {
    ExperimentConfig cfg = table_config(SystemPreset::Classical, 0.5, 1.0, WeightEvaluation::Auto);
    cfg.oracle = false;
    Problem p = build_problem(cfg);
    for (double& u : p.u0.values) {
        u *= 1e300;
    }
    CHECK_THROWS_AS(run(p), NumericalError);
}

TEST_CASE("regularized pulse error at t = 5") {
    const SimulationResult r = simulate(
        table_config(SystemPreset::Regularized, 0.005, 0.0000058339, WeightEvaluation::ClosedForm));
    CHECK(r.summary.back().linf_u == doctest::Approx(1.90e-4).epsilon(0.05));
}

TEST_CASE("halving the step does not increase the error at zeta = 1") {
    double previous = 1.0;
    for (const double dt : {0.5, 0.05, 0.005}) {
        const SimulationResult r =
            simulate(table_config(SystemPreset::Regularized, dt, 1.0, WeightEvaluation::ClosedForm));
        CHECK(r.summary.back().linf_u <= previous);
        previous = r.summary.back().linf_u;
    }
}

TEST_CASE("classical pulse keeps V at rest") {
    const SimulationResult r = simulate(
        table_config(SystemPreset::Classical, 0.005, 0.0000086530, WeightEvaluation::ClosedForm));
    CHECK(r.summary.back().linf_v < 1e-10);
}

} // TEST_SUITE
