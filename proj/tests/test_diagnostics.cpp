#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "nscrit/diagnostics.hpp"
#include "nscrit/geometry.hpp"
#include "nscrit/initial_data.hpp"
#include "nscrit/operators.hpp"
#include "nscrit/pressure.hpp"
#include "nscrit/solver.hpp"
#include "nscrit/test_function.hpp"
#include "nscrit/transform.hpp"

using namespace nscrit;

namespace {

constexpr double kPi = 0.5 * kTwoPi;

Trajectory frozen_trajectory(const SpectralVelocity& u, const std::vector<double>& times) {
    Trajectory t;
    t.grid = u.grid;
    t.dt_policy = {"frozen", 0.0, 1};
    for (double s : times) {
        t.times.push_back(s);
        t.snapshots.push_back(u);
    }
    return t;
}

Trajectory heat_trajectory(const SpectralVelocity& u0, const std::vector<double>& times) {
    Trajectory t;
    t.grid = u0.grid;
    t.dt_policy = {"heat", 0.0, 1};
    for (double s : times) {
        t.times.push_back(s);
        t.snapshots.push_back(heat_propagate(u0, s));
    }
    return t;
}

// u = A (sin z, cos z, 0): divergence free, u.grad u = 0, |u| = A everywhere,
// so the recovered pressure vanishes and ball sums have a closed form
SpectralVelocity shear_flow(const Grid& g, double amp) {
    SpectralVelocity u(g);
    std::size_t kp = g.index(0, 0, 1), km = g.index(0, 0, g.n - 1);
    u.coeffs[0][kp] = Complex(0.0, -0.5 * amp);
    u.coeffs[0][km] = Complex(0.0, +0.5 * amp);
    u.coeffs[1][kp] = Complex(0.5 * amp, 0.0);
    u.coeffs[1][km] = Complex(0.5 * amp, 0.0);
    return u;
}

// snapshot times dense enough near t_top that every dyadic radius in the
// list satisfies the in-window spacing bound r^2/8, with the exact window
// start t_top - r^2 included so coverage is full
std::vector<double> graded_times(double t_top, const std::vector<double>& radii) {
    std::set<double> s;
    s.insert(0.0);
    s.insert(t_top);
    for (double r : radii) {
        double lo = t_top - r * r;
        double step = r * r / 9.0;
        for (double t = std::max(lo, 0.0); t < t_top; t += step) s.insert(t);
    }
    return {s.begin(), s.end()};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= double(x.size());
    my /= double(x.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        den += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return num / den;
}

// the decaying curl eigenflow solves the full equations, evolved here with
// the production stepper so the energy identity sees real solver output
Trajectory abc_run(int n, double amp, double horizon, double dt) {
    Grid g(n, kTwoPi);
    InitialDataSpec spec;
    spec.family = DataFamily::beltrami;
    spec.amplitude = amp;
    SpectralVelocity u0 = make_initial_data(g, spec);
    EvolveOptions opt;
    opt.dt = dt;
    opt.snapshot_stride = 1;
    opt.norm_stride = 50;
    auto [traj, report] = evolve(u0, horizon, opt);
    REQUIRE(report.outcome == Outcome::completed);
    return traj;
}

}  // namespace

TEST_CASE("space bump derivatives match finite differences") {
    SpaceBump phi{{2.0, 3.0, 0.2}, 1.3, 0.8};
    double L = kTwoPi;
    // interior, near the support edge, and wrapped across the boundary
    std::vector<std::array<double, 3>> pts = {
        {2.3, 2.8, 0.5}, {2.9, 3.4, 0.9}, {1.1, 3.1, 6.2}, {2.0, 3.0, 0.2}};
    double h = 1e-5;
    for (const auto& x : pts) {
        auto grad = phi.grad(x, L);
        double lap_fd = 0.0;
        for (int d = 0; d < 3; ++d) {
            auto xp = x, xm = x;
            xp[d] += h;
            xm[d] -= h;
            double fp = phi.value(xp, L), fm = phi.value(xm, L), f0 = phi.value(x, L);
            CHECK(grad[d] == doctest::Approx((fp - fm) / (2.0 * h)).epsilon(1e-6).scale(1.0));
            lap_fd += (fp - 2.0 * f0 + fm) / (h * h);
        }
        CHECK(phi.laplacian(x, L) == doctest::Approx(lap_fd).epsilon(1e-4).scale(1.0));
    }
    // compact support: zero value and derivatives outside the slab
    std::array<double, 3> out{4.0, 3.0, 0.2};
    CHECK(phi.value(out, L) == 0.0);
    CHECK(phi.grad(out, L)[0] == 0.0);
    CHECK(phi.laplacian(out, L) == 0.0);
    // centre is a smooth maximum
    auto g0 = phi.grad({2.0, 3.0, 0.2}, L);
    CHECK(std::abs(g0[0]) + std::abs(g0[1]) + std::abs(g0[2]) < 1e-14);
    CHECK(phi.value({2.0, 3.0, 0.2}, L) == doctest::Approx(0.8));
}

TEST_CASE("time bump profile and half decay cutoff behave as documented") {
    TimeBump psi{0.5, 0.2};
    double h = 1e-6;
    for (double t : {0.36, 0.45, 0.5, 0.61}) {
        double fd = (psi.value(t + h) - psi.value(t - h)) / (2.0 * h);
        CHECK(psi.derivative(t) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
    CHECK(psi.value(0.5) == doctest::Approx(1.0));
    CHECK(psi.value(0.29) == 0.0);
    CHECK(psi.value(0.71) == 0.0);

    CHECK(TimeBump::half_decay(0.0, 0.4) == doctest::Approx(1.0));
    CHECK(TimeBump::half_decay_derivative(0.0, 0.4) == doctest::Approx(0.0));
    CHECK(TimeBump::half_decay(0.4, 0.4) == 0.0);
    CHECK(TimeBump::half_decay(0.5, 0.4) == 0.0);
    double prev = 1.0;
    for (double t = 0.05; t < 0.4; t += 0.05) {
        double v = TimeBump::half_decay(t, 0.4);
        CHECK(v < prev);
        CHECK(v > 0.0);
        double fd = (TimeBump::half_decay(t + h, 0.4) - TimeBump::half_decay(t - h, 0.4)) /
                    (2.0 * h);
        CHECK(TimeBump::half_decay_derivative(t, 0.4) ==
              doctest::Approx(fd).epsilon(1e-6).scale(1.0));
        prev = v;
    }
}

TEST_CASE("diagnostics record validates its inputs") {
    DiagnosticsRecord rec;
    rec.set_times({0.0, 0.1, 0.2});
    rec.add_series("a", {1.0, 2.0, 3.0});
    CHECK(rec.series.at("a")[1] == 2.0);
    CHECK_THROWS_AS(rec.add_series("b", {1.0, 2.0}), std::invalid_argument);
    DiagnosticsRecord bad;
    CHECK_THROWS_AS(bad.set_times({0.0, 0.1, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(bad.set_times({0.2, 0.1}), std::invalid_argument);
}

TEST_CASE("concentration quantity matches the closed form on a constant-speed shear flow") {
    Grid g(32, kTwoPi);
    double amp = 0.7;
    SpectralVelocity u0 = shear_flow(g, amp);
    CHECK(divergence_defect(u0) == 0.0);
    // advection is a pure shear along z with u independent of x, y, so the
    // recovered pressure is identically zero
    ScalarSpectralField p = pressure_from_velocity(u0);
    CHECK(max_abs_coeff(g, p.coeffs) == 0.0);

    std::vector<double> radii{1.2, 0.6, 0.3};
    double t_top = 1.5;
    Trajectory traj = frozen_trajectory(u0, graded_times(t_top, radii));

    std::array<double, 3> x0{2.3, 0.8, 4.0};
    std::vector<double> values;
    for (double r : radii) {
        double v = ckn_quantity(traj, ParabolicCylinder{x0, t_top, r});
        // constant integrand: r^{-2} * (window length r^2) * sum_ball |u|^3 dV
        double predicted = amp * amp * amp * g.cell_volume() *
                           double(ball_indices(g, x0, r).size());
        CHECK(v == doctest::Approx(predicted).epsilon(1e-12));
        values.push_back(v);
    }
    // lattice ball volume carries the r^3 scaling
    CHECK(std::abs(loglog_slope(radii, values) - 3.0) < 0.1);
}

TEST_CASE("concentration quantity scales like r cubed at a regular point") {
    Grid g(64, kTwoPi);
    InitialDataSpec spec;
    spec.family = DataFamily::taylor_green;
    spec.amplitude = 0.5;
    SpectralVelocity u0 = make_initial_data(g, spec);

    std::vector<double> radii{1.2, 0.6, 0.3, 0.15};
    double t_top = 1.5;
    Trajectory traj = frozen_trajectory(u0, graded_times(t_top, radii));

    // a point where the speed is moderate and slowly varying; near zeros of u
    // the ball integral is boundary dominated and the slope rises toward 6,
    // near maxima it dips below 3
    std::array<double, 3> x0{0.7, 0.9, 1.1};
    std::vector<double> values;
    for (double r : radii)
        values.push_back(ckn_quantity(traj, ParabolicCylinder{x0, t_top, r}));
    for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[i] < values[i - 1]);
    double slope = loglog_slope(radii, values);
    CHECK(std::abs(slope - 3.0) < 0.3);
}

TEST_CASE("concentration quantity is invariant under the parabolic scaling map") {
    Grid g(32, kTwoPi);
    SpectralVelocity u0 = shear_flow(g, 0.7);
    std::vector<double> radii{0.6};
    double t_top = 1.5;
    Trajectory traj = frozen_trajectory(u0, graded_times(t_top, {1.2, 0.6}));

    // u_lambda(x, t) = lambda u(lambda x, lambda^2 t) on the shrunken box,
    // sampled on the image lattice; the quantity is scale free
    SpectralVelocity ur = similarity_rescale(u0, 2);
    Trajectory resc;
    resc.grid = ur.grid;
    resc.dt_policy = traj.dt_policy;
    for (double t : traj.times) {
        resc.times.push_back(t / 4.0);
        resc.snapshots.push_back(ur);
    }

    std::array<double, 3> x0{2.3, 0.8, 4.0};
    double base = ckn_quantity(traj, ParabolicCylinder{x0, t_top, 0.6});
    double mapped = ckn_quantity(
        resc, ParabolicCylinder{{x0[0] / 2, x0[1] / 2, x0[2] / 2}, t_top / 4.0, 0.3});
    CHECK(mapped == doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("concentration quantity rejects bad cylinders") {
    Grid g(16, kTwoPi);
    SpectralVelocity u0 = shear_flow(g, 0.5);
    std::vector<double> times;
    for (int i = 0; i <= 30; ++i) times.push_back(0.05 * i);
    Trajectory traj = frozen_trajectory(u0, times);

    std::array<double, 3> c{kPi, kPi, kPi};
    CHECK_THROWS_AS(ckn_quantity(traj, ParabolicCylinder{c, 1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ckn_quantity(traj, ParabolicCylinder{c, 1.0, kPi}),
                    std::invalid_argument);
    // top time beyond the stored horizon
    CHECK_THROWS_AS(ckn_quantity(traj, ParabolicCylinder{c, 2.0, 0.6}),
                    std::invalid_argument);
    // 0.05 spacing is coarser than r^2/8 = 0.045
    CHECK_THROWS_AS(ckn_quantity(traj, ParabolicCylinder{c, 1.0, 0.6}),
                    std::invalid_argument);
    // ball radius below the lattice spacing resolves too few points
    CHECK_THROWS_AS(ckn_quantity(traj, ParabolicCylinder{c, 1.0, 0.15}),
                    std::invalid_argument);
}

TEST_CASE("point classification is strict at the threshold") {
    CHECK(classify_point(0.049) == PointClass::small_regular);
    CHECK(classify_point(0.05) == PointClass::not_small);
    CHECK(classify_point(0.051) == PointClass::not_small);
    CHECK(classify_point(0.09, 0.1) == PointClass::small_regular);
    CHECK_THROWS_AS(classify_point(0.01, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(classify_point(0.01, -1.0), std::invalid_argument);
}

TEST_CASE("local energy identity holds on a solver-evolved eigenflow") {
    Trajectory traj = abc_run(16, 0.25, 0.2, 1e-3);
    SpaceBump phi{{kPi, kPi, kPi}, 1.5, 1.0};
    TimeBump psi{0.1, 0.08};

    LocalEnergyResult res = local_energy_residual(traj, phi, psi);
    CHECK(res.lhs > 0.0);
    CHECK(res.residual_rel < 1e-6);
    CHECK(res.residual == doctest::Approx(std::abs(res.rhs - res.lhs)));

    LocalEnergyResult init = init_energy_residual(traj, phi, 0.15);
    CHECK(init.lhs > 0.0);
    CHECK(init.residual_rel < 1e-6);

    // damping the snapshots breaks the balance; the residual must see it
    Trajectory damped = traj;
    for (std::size_t i = 0; i < damped.snapshots.size(); ++i)
        scale(damped.snapshots[i], std::exp(-2.0 * damped.times[i]));
    CHECK(local_energy_residual(damped, phi, psi).residual_rel > 1e-3);

    // temporal support must sit strictly inside the recorded range
    CHECK_THROWS_AS(local_energy_residual(traj, phi, TimeBump{0.05, 0.10}),
                    std::invalid_argument);
    CHECK_THROWS_AS(local_energy_residual(traj, phi, TimeBump{0.15, 0.08}),
                    std::invalid_argument);
    CHECK_THROWS_AS(init_energy_residual(traj, phi, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(init_energy_residual(traj, phi, 0.25), std::invalid_argument);
}

TEST_CASE("derivative bounds are invariant under the parabolic scaling map") {
    Grid g(32, kTwoPi);
    InitialDataSpec spec;
    spec.family = DataFamily::localized_bump;
    spec.amplitude = 1.0;
    spec.bump_radius = 1.0;
    SpectralVelocity u0 = make_initial_data(g, spec);
    std::vector<double> times;
    for (int i = 0; i <= 5; ++i) times.push_back(0.02 * i);
    Trajectory traj = heat_trajectory(u0, times);
    ParabolicCylinder cyl{{kPi, kPi, kPi}, 0.1, 0.6};

    Trajectory resc;
    resc.dt_policy = traj.dt_policy;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        resc.times.push_back(traj.times[i] / 4.0);
        resc.snapshots.push_back(similarity_rescale(traj.snapshots[i], 2));
    }
    resc.grid = resc.snapshots.front().grid;
    ParabolicCylinder mapped{{kPi / 2, kPi / 2, kPi / 2}, 0.025, 0.3};

    for (int order = 0; order <= 3; ++order) {
        double base = derivative_bound_check(traj, cyl, order);
        CHECK(base > 0.0);
        CHECK(derivative_bound_check(resc, mapped, order) ==
              doctest::Approx(base).epsilon(1e-12));
    }
    CHECK_THROWS_AS(derivative_bound_check(traj, cyl, 4), std::invalid_argument);
    CHECK_THROWS_AS(derivative_bound_check(traj, cyl, -1), std::invalid_argument);
}

TEST_CASE("time holder quotient is positive and needs enough snapshots") {
    Grid g(32, kTwoPi);
    InitialDataSpec spec;
    spec.family = DataFamily::localized_bump;
    spec.amplitude = 1.0;
    spec.bump_radius = 1.0;
    SpectralVelocity u0 = make_initial_data(g, spec);
    std::vector<double> times;
    for (int i = 0; i <= 5; ++i) times.push_back(0.02 * i);
    Trajectory traj = heat_trajectory(u0, times);
    ParabolicCylinder cyl{{kPi, kPi, kPi}, 0.1, 0.6};

    double q = time_holder_quotient(traj, cyl);
    CHECK(q > 0.0);
    CHECK(std::isfinite(q));
    CHECK(time_holder_quotient(traj, cyl) == q);

    // half cylinder window (0.055, 0.06] holds too few snapshots
    Trajectory coarse = heat_trajectory(u0, {0.0, 0.02, 0.04, 0.055, 0.06});
    CHECK_THROWS_AS(
        time_holder_quotient(coarse, ParabolicCylinder{{kPi, kPi, kPi}, 0.06, 0.14}),
        std::invalid_argument);
}

TEST_CASE("decay diagnostics are exact on a single-mode heat flow") {
    Grid g(16, kTwoPi);
    double amp = 0.9;
    // u = (0, 0, amp cos x), an exact heat solution with unit wavenumber:
    // every derivative order has sup |grad^l u| = amp e^{-t}
    SpectralVelocity u0(g);
    u0.coeffs[2][g.index(1, 0, 0)] = Complex(0.5 * amp, 0.0);
    u0.coeffs[2][g.index(g.n - 1, 0, 0)] = Complex(0.5 * amp, 0.0);
    Trajectory traj = heat_trajectory(u0, {0.0, 0.1, 0.25, 0.5});

    for (int order = 0; order <= 3; ++order) {
        DiagnosticsRecord rec = decay_diagnostic(traj, order);
        std::string name = "decay_l" + std::to_string(order);
        REQUIRE(rec.series.count(name) == 1);
        REQUIRE(rec.times.size() == 3);  // the initial snapshot is excluded
        for (std::size_t i = 0; i < rec.times.size(); ++i) {
            double t = rec.times[i];
            double expected = std::pow(t, 0.5 * (order + 1)) * amp * std::exp(-t);
            CHECK(rec.series.at(name)[i] == doctest::Approx(expected).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(decay_diagnostic(traj, 4), std::invalid_argument);
    CHECK_THROWS_AS(decay_diagnostic(traj, -1), std::invalid_argument);
    Trajectory only_initial = heat_trajectory(u0, {0.0});
    CHECK_THROWS_AS(decay_diagnostic(only_initial, 1), std::invalid_argument);
}

TEST_CASE("local energy norm grows with the cylinder radius") {
    Grid g(16, kTwoPi);
    InitialDataSpec spec;
    spec.family = DataFamily::beltrami;
    spec.amplitude = 0.3;
    SpectralVelocity u0 = make_initial_data(g, spec);
    std::vector<double> times;
    for (int i = 0; i <= 25; ++i) times.push_back(0.02 * i);
    Trajectory traj = heat_trajectory(u0, times);

    std::array<double, 3> c{kPi, kPi, kPi};
    double e1 = local_energy_norm_sq(traj, TildeCylinder{c, 0.56});
    double e2 = local_energy_norm_sq(traj, TildeCylinder{c, 0.60});
    double e3 = local_energy_norm_sq(traj, TildeCylinder{c, 0.65});
    CHECK(e1 > 0.0);
    CHECK(e1 < e2);
    CHECK(e2 < e3);
    // r^2 = 1.44 exceeds the stored horizon
    CHECK_THROWS_AS(local_energy_norm_sq(traj, TildeCylinder{c, 1.2}),
                    std::invalid_argument);
}

TEST_CASE("initial attainment rate is near one for strong attainment") {
    Grid g(16, kTwoPi);
    InitialDataSpec spec;
    spec.family = DataFamily::localized_bump;
    spec.amplitude = 1.0;
    spec.bump_radius = 1.2;
    SpectralVelocity u0 = make_initial_data(g, spec);
    Trajectory traj = heat_trajectory(u0, {0.0, 1e-3, 2e-3, 4e-3, 8e-3});

    SpaceBump w{{kPi, kPi, kPi}, 1.2, 1.0};
    double rate = initial_attainment_rate(traj, w, 4);
    CHECK(rate > 0.9);
    CHECK(rate < 1.1);

    Trajectory tiny = heat_trajectory(u0, {0.0, 1e-3, 2e-3});
    CHECK_THROWS_AS(initial_attainment_rate(tiny, w, 4), std::invalid_argument);
    CHECK_THROWS_AS(initial_attainment_rate(traj, w, 1), std::invalid_argument);
}

TEST_CASE("cylinder sweep rows agree with the standalone diagnostics") {
    Grid g(16, kTwoPi);
    InitialDataSpec spec;
    spec.family = DataFamily::beltrami;
    spec.amplitude = 0.3;
    SpectralVelocity u0 = make_initial_data(g, spec);
    // the curl eigenflow decays exactly by e^{-t}
    Trajectory traj;
    traj.grid = g;
    traj.dt_policy = {"exact", 0.02, 1};
    for (int i = 0; i <= 25; ++i) {
        double t = 0.02 * i;
        SpectralVelocity ut = u0;
        scale(ut, std::exp(-t));
        traj.times.push_back(t);
        traj.snapshots.push_back(ut);
    }

    std::vector<std::array<double, 3>> centers;
    centers.push_back({kPi, kPi, kPi});
    centers.push_back({1.0, 2.0, 3.0});
    std::vector<double> radii{0.6, 0.56};
    std::vector<double> t_tops{0.4, 0.5};
    auto rows = cylinder_sweep(traj, centers, radii, t_tops, 0.05);
    REQUIRE(rows.size() == 8);

    // rows iterate centers, then top times, then radii
    CHECK(rows[0].center[0] == kPi);
    CHECK(rows[0].t_top == 0.4);
    CHECK(rows[0].radius == 0.6);
    CHECK(rows[3].t_top == 0.5);
    CHECK(rows[3].radius == 0.56);
    CHECK(rows[4].center[0] == 1.0);

    for (const auto& row : rows) {
        CHECK(row.ckn ==
              ckn_quantity(traj, ParabolicCylinder{row.center, row.t_top, row.radius}));
        CHECK(row.energy_sq ==
              local_energy_norm_sq(traj, TildeCylinder{row.center, row.radius}));
        CHECK(row.energy_over_r == row.energy_sq / row.radius);
        CHECK(row.classification == classify_point(row.ckn, 0.05));
    }
    // the decaying flow concentrates less at later top times
    CHECK(rows[2].ckn < rows[0].ckn);
    // both classifications appear across the chosen centers
    CHECK(rows[0].classification == PointClass::not_small);
    CHECK(rows[4].classification == PointClass::small_regular);

    auto again = cylinder_sweep(traj, centers, radii, t_tops, 0.05);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(again[i].ckn == rows[i].ckn);
        CHECK(again[i].energy_sq == rows[i].energy_sq);
    }
}
