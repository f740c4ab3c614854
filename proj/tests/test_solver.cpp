#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nscrit/initial_data.hpp"
#include "nscrit/norms.hpp"
#include "nscrit/operators.hpp"
#include "nscrit/solver.hpp"

using namespace nscrit;

namespace {

double max_coeff_diff(const SpectralVelocity& a, const SpectralVelocity& b) {
    double m = 0.0;
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < a.coeffs[d].size(); ++i)
            m = std::max(m, std::abs(a.coeffs[d][i] - b.coeffs[d][i]));
    return m;
}

SpectralVelocity taylor_green_data(int n, double amp) {
    Grid g(n, kTwoPi);
    InitialDataSpec spec;
    spec.family = DataFamily::taylor_green;
    spec.amplitude = amp;
    return make_initial_data(g, spec);
}

SpectralVelocity beltrami_data(int n, double amp) {
    Grid g(n, kTwoPi);
    InitialDataSpec spec;
    spec.family = DataFamily::beltrami;
    spec.amplitude = amp;
    return make_initial_data(g, spec);
}

}  // namespace

TEST_CASE("heat propagation: exact mode decay and semigroup law") {
    Grid g(16, kTwoPi);
    SpectralVelocity u(g);
    u.coeffs[2][g.index(2, 1, 0)] = Complex(0.3, -0.1);
    u.coeffs[2][g.conj_index(2, 1, 0)] = Complex(0.3, 0.1);

    SpectralVelocity ut = heat_propagate(u, 0.4);
    double expect = 0.3 * std::exp(-5.0 * 0.4);
    CHECK(std::abs(ut.coeffs[2][g.index(2, 1, 0)].real() - expect) <= 1e-15);

    SpectralVelocity two_steps = heat_propagate(heat_propagate(u, 0.15), 0.25);
    CHECK(max_coeff_diff(two_steps, ut) <= 1e-15);
}

TEST_CASE("stepper with zero forcing reproduces the heat flow exactly") {
    SpectralVelocity u = taylor_green_data(16, 0.4);
    SpectralVelocity expect = heat_propagate(u, 0.01);
    StageRhs zero = [&](const SpectralVelocity& s, double, int) {
        return SpectralVelocity(s.grid);
    };
    if_rk4_step(u, 0.0, 0.01, zero);
    CHECK(max_coeff_diff(u, expect) <= 1e-15);
}

TEST_CASE("eigenflow of curl decays as a pure heat mode through the full solver") {
    // The nonlinear term of this flow is a perfect gradient, so projection
    // removes it and the solution is exactly exp(-t) times the data.
    SpectralVelocity u0 = beltrami_data(16, 0.3);
    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.snapshot_stride = 100;
    auto [traj, report] = evolve(u0, 0.1, opts);
    REQUIRE(report.outcome == Outcome::completed);

    SpectralVelocity expect = heat_propagate(u0, 0.1);
    double scale = hs_norm(u0, 0.0);
    CHECK(hs_norm(subtract(traj.snapshots.back(), expect), 0.0) <= 1e-10 * scale);
}

TEST_CASE("time stepping converges at fourth order") {
    // amplitude large enough that the nonlinear truncation error is far
    // above roundoff across the whole dt ladder
    SpectralVelocity u0 = taylor_green_data(16, 2.0);
    double T = 0.05;

    auto end_state = [&](double dt) {
        EvolveOptions opts;
        opts.dt = dt;
        opts.snapshot_stride = 100000;
        opts.norm_stride = 100000;
        auto [traj, report] = evolve(u0, T, opts);
        return traj.snapshots.back();
    };

    SpectralVelocity ref = end_state(3.125e-4);
    double e1 = hs_norm(subtract(end_state(5e-3), ref), 0.0);
    double e2 = hs_norm(subtract(end_state(2.5e-3), ref), 0.0);
    double e3 = hs_norm(subtract(end_state(1.25e-3), ref), 0.0);

    double order12 = std::log2(e1 / e2);
    double order23 = std::log2(e2 / e3);
    CHECK(order12 > 3.7);
    CHECK(order12 < 4.3);
    CHECK(order23 > 3.5);  // closer to the reference, so a little noisier
}

TEST_CASE("energy budget closes to the scheme's order") {
    SpectralVelocity u0 = taylor_green_data(32, 0.3);
    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.snapshot_stride = 1000;
    auto [traj, report] = evolve(u0, 0.2, opts);
    REQUIRE(report.outcome == Outcome::completed);

    const NormSample& first = report.norm_history.front();
    const NormSample& last = report.norm_history.back();
    double e0 = first.l2 * first.l2;
    double eT = last.l2 * last.l2;
    double budget = std::abs(eT + 2.0 * last.dissipation_cum - e0);
    CHECK(budget <= 1e-8 * e0);

    // dissipation actually accumulated something sensible
    CHECK(last.dissipation_cum > 0.0);
    CHECK(eT < e0);
}

TEST_CASE("advective CFL is rejected up front") {
    SpectralVelocity u0 = taylor_green_data(16, 100.0);
    EvolveOptions opts;
    opts.dt = 1e-2;
    try {
        evolve(u0, 0.1, opts);
        FAIL_CHECK("expected a CFL rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("CFL") != std::string::npos);
    }
}

TEST_CASE("evolve validates its inputs") {
    SpectralVelocity u0 = taylor_green_data(8, 0.1);
    EvolveOptions opts;
    opts.dt = 1e-3;
    CHECK_THROWS_AS(evolve(u0, -1.0, opts), std::invalid_argument);
    CHECK_THROWS_AS(evolve(u0, 0.0105, opts), std::invalid_argument);  // not a multiple
    opts.dt = -1e-3;
    CHECK_THROWS_AS(evolve(u0, 0.01, opts), std::invalid_argument);
    opts.dt = 1e-3;
    opts.snapshot_stride = 0;
    CHECK_THROWS_AS(evolve(u0, 0.01, opts), std::invalid_argument);
    opts.snapshot_stride = 1;
    opts.extra_snapshot_times = {0.5};  // outside the horizon
    CHECK_THROWS_AS(evolve(u0, 0.01, opts), std::invalid_argument);

    // divergence precondition
    SpectralVelocity bad = u0;
    Grid g = bad.grid;
    bad.coeffs[0][g.index(1, 0, 0)] += Complex(0.5, 0.0);
    bad.coeffs[0][g.conj_index(1, 0, 0)] += Complex(0.5, 0.0);
    opts.extra_snapshot_times.clear();
    CHECK_THROWS_AS(evolve(bad, 0.01, opts), std::invalid_argument);
}

TEST_CASE("snapshot schedule honors stride and extra times") {
    SpectralVelocity u0 = taylor_green_data(8, 0.1);
    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.snapshot_stride = 5;
    opts.extra_snapshot_times = {0.0031};  // rounds to step 3
    auto [traj, report] = evolve(u0, 0.01, opts);

    REQUIRE(traj.times.size() == 4);
    CHECK(traj.times[0] == doctest::Approx(0.0));
    CHECK(traj.times[1] == doctest::Approx(0.003));
    CHECK(traj.times[2] == doctest::Approx(0.005));
    CHECK(traj.times[3] == doctest::Approx(0.01));
}

TEST_CASE("cap scan order: resolution loss outranks the growth proxy") {
    Caps caps;
    caps.hhalf_growth_factor = 2.0;
    caps.tail_threshold = 1e-3;
    caps.x_norm_cap = 10.0;

    std::vector<NormSample> hist(3);
    hist[0].time = 0.0;
    hist[0].hhalf = 1.0;
    hist[1].time = 0.1;
    hist[1].hhalf = 1.5;
    hist[2].time = 0.2;
    hist[2].hhalf = 5.0;      // growth cap would fire here
    hist[2].tail_fraction = 0.5;  // but so does the tail check
    CHECK(detect_blowup_proxy(hist, caps) == Outcome::underresolved);

    hist[2].tail_fraction = 0.0;
    CHECK(detect_blowup_proxy(hist, caps) == Outcome::blowup_proxy);

    hist[2].hhalf = 1.0;
    hist[2].x_norm_cum = 11.0;
    CHECK(detect_blowup_proxy(hist, caps) == Outcome::blowup_proxy);

    hist[2].x_norm_cum = 0.0;
    CHECK(detect_blowup_proxy(hist, caps) == Outcome::completed);

    hist[1].l2 = std::nan("");
    CHECK(detect_blowup_proxy(hist, caps) == Outcome::underresolved);
}

TEST_CASE("runs stop early when a cap trips") {
    // spectrally flat data sits on the resolution edge from the start
    Grid g(8, kTwoPi);
    InitialDataSpec spec;
    spec.family = DataFamily::random_divfree;
    spec.amplitude = 0.2;
    spec.seed = 9;
    spec.spectrum_slope = 0.0;
    SpectralVelocity rough = make_initial_data(g, spec);

    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.caps = Caps{};  // tail threshold 1e-3
    auto [traj, report] = evolve(rough, 0.05, opts);
    CHECK(report.outcome == Outcome::underresolved);
    CHECK(report.t_end < 0.05);
    CHECK_FALSE(report.note.empty());

    // a tiny space-time cap turns a calm run into a proxy hit
    SpectralVelocity tg = taylor_green_data(8, 0.5);
    Caps caps;
    caps.x_norm_cap = 1e-4;
    caps.tail_threshold = 1.0;  // effectively off
    EvolveOptions xopts;
    xopts.dt = 1e-3;
    xopts.caps = caps;
    auto [traj2, report2] = evolve(tg, 0.05, xopts);
    CHECK(report2.outcome == Outcome::blowup_proxy);
    CHECK(report2.t_end < 0.05);
}

TEST_CASE("norm history is consistent along a run") {
    SpectralVelocity u0 = taylor_green_data(16, 0.3);
    EvolveOptions opts;
    opts.dt = 1e-3;
    opts.norm_stride = 2;
    opts.snapshot_stride = 10;
    auto [traj, report] = evolve(u0, 0.02, opts);

    REQUIRE(report.outcome == Outcome::completed);
    REQUIRE(report.norm_history.size() >= 3);
    for (std::size_t i = 1; i < report.norm_history.size(); ++i) {
        const auto& prev = report.norm_history[i - 1];
        const auto& cur = report.norm_history[i];
        CHECK(cur.time > prev.time);
        CHECK(cur.dissipation_cum >= prev.dissipation_cum);
        CHECK(cur.x_norm_cum >= prev.x_norm_cum);
        CHECK(cur.l2 <= prev.l2 * (1.0 + 1e-12));  // this flow only dissipates
        CHECK(cur.tail_fraction <= 1e-6);
    }
    CHECK(report.cfl_at_start > 0.0);
    CHECK(report.cfl_at_start < 0.5);
}
