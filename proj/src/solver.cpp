#include "nscrit/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "nscrit/nonlinear.hpp"
#include "nscrit/norms.hpp"
#include "nscrit/operators.hpp"
#include "nscrit/transform.hpp"

namespace nscrit {

SpectralVelocity heat_propagate(const SpectralVelocity& u0, double t) {
    SpectralVelocity u = u0;
    heat_multiply_inplace(u, t);
    return u;
}

double cfl_number(const SpectralVelocity& u, double dt) {
    PhysicalField phys = to_physical(u);
    return linf_norm(phys) * dt / u.grid.dx();
}

void if_rk4_step(SpectralVelocity& u, double t, double dt, const StageRhs& rhs) {
    const double h = dt;
    // K1 = N(u_n)
    SpectralVelocity k1 = rhs(u, t, 0);

    // K2 = N(E (u_n + h/2 K1)) with E = exp(-|k|^2 h/2)
    SpectralVelocity s = u;
    axpy(s, Complex(0.5 * h, 0.0), k1);
    heat_multiply_inplace(s, 0.5 * h);
    SpectralVelocity k2 = rhs(s, t + 0.5 * h, 1);

    // K3 = N(E u_n + h/2 K2)
    SpectralVelocity uh = heat_propagate(u, 0.5 * h);  // E u_n
    s = uh;
    axpy(s, Complex(0.5 * h, 0.0), k2);
    SpectralVelocity k3 = rhs(s, t + 0.5 * h, 2);

    // K4 = N(E^2 u_n + h E K3)
    heat_multiply_inplace(uh, 0.5 * h);  // now E^2 u_n
    heat_multiply_inplace(k3, 0.5 * h);  // now E K3
    s = uh;
    axpy(s, Complex(h, 0.0), k3);
    SpectralVelocity k4 = rhs(s, t + h, 3);

    // u_{n+1} = E^2 u_n + h/6 (E^2 K1 + 2 E K2 + 2 E K3 + K4)
    heat_multiply_inplace(k1, h);
    heat_multiply_inplace(k2, 0.5 * h);
    u = std::move(uh);
    axpy(u, Complex(h / 6.0, 0.0), k1);
    axpy(u, Complex(h / 3.0, 0.0), k2);
    axpy(u, Complex(h / 3.0, 0.0), k3);
    axpy(u, Complex(h / 6.0, 0.0), k4);
}

namespace {

struct SpectralNorms {
    double l2 = 0.0, hhalf = 0.0, h1 = 0.0, tail = 0.0;
    bool finite() const {
        return std::isfinite(l2) && std::isfinite(hhalf) && std::isfinite(h1);
    }
};

// one fused pass for the per-sample norm bundle
SpectralNorms measure(const SpectralVelocity& u) {
    const Grid& g = u.grid;
    int n = g.n;
    int cap = g.max_retained_mode();
    int edge = (2 * cap) / 3;
    double s0 = 0.0, sh = 0.0, s1 = 0.0, tail_mass = 0.0, total_mass = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t idx = g.index(a, b, c);
                double mag2 = std::norm(u.coeffs[0][idx]) +
                              std::norm(u.coeffs[1][idx]) +
                              std::norm(u.coeffs[2][idx]);
                if (mag2 == 0.0) continue;
                if (a == 0 && b == 0 && c == 0) continue;
                double k2 = g.k_squared(a, b, c);
                s0 += mag2;
                sh += std::sqrt(k2) * mag2;
                s1 += k2 * mag2;
                if (g.retained(a, b, c)) {
                    total_mass += mag2;
                    int shell = std::max({std::abs(g.alias(a)), std::abs(g.alias(b)),
                                          std::abs(g.alias(c))});
                    if (shell > edge) tail_mass += mag2;
                }
            }
    double vol = g.box_length * g.box_length * g.box_length;
    SpectralNorms out;
    out.l2 = std::sqrt(vol * s0);
    out.hhalf = std::sqrt(vol * sh);
    out.h1 = std::sqrt(vol * s1);
    out.tail = total_mass > 0.0 ? tail_mass / total_mass : 0.0;
    return out;
}

// returns the outcome forced by a cap crossing, if any (tail first)
std::optional<Outcome> check_caps(const NormSample& s, double hhalf0, const Caps& caps) {
    if (s.tail_fraction > caps.tail_threshold) return Outcome::underresolved;
    if (s.hhalf > caps.hhalf_growth_factor * hhalf0) return Outcome::blowup_proxy;
    if (s.x_norm_cum > caps.x_norm_cap) return Outcome::blowup_proxy;
    return std::nullopt;
}

}  // namespace

Outcome detect_blowup_proxy(const std::vector<NormSample>& history, const Caps& caps) {
    if (history.empty())
        throw std::invalid_argument("detect_blowup_proxy: empty history");
    double hhalf0 = history.front().hhalf;
    for (const NormSample& s : history) {
        if (!std::isfinite(s.l2) || !std::isfinite(s.h1))
            return Outcome::underresolved;
        if (auto hit = check_caps(s, hhalf0, caps)) return *hit;
    }
    return Outcome::completed;
}

std::pair<Trajectory, SolveReport> evolve(const SpectralVelocity& u0,
                                          double horizon,
                                          const EvolveOptions& opts) {
    if (!(horizon > 0.0))
        throw std::invalid_argument("evolve: horizon must be positive");
    if (!(opts.dt > 0.0))
        throw std::invalid_argument("evolve: dt must be positive");
    long long n_steps = std::llround(horizon / opts.dt);
    if (n_steps < 1 ||
        std::abs(double(n_steps) * opts.dt - horizon) > 1e-9 * std::max(1.0, horizon))
        throw std::invalid_argument("evolve: horizon must be an integer multiple of dt");
    if (opts.snapshot_stride < 1 || opts.norm_stride < 1)
        throw std::invalid_argument("evolve: strides must be >= 1");
    if (divergence_defect(u0) > 1e-8)
        throw std::invalid_argument("evolve: initial data is not divergence-free");

    SpectralVelocity u = dealiased(u0);
    hermitian_symmetrize(u);
    remove_mean(u);

    double cfl = cfl_number(u, opts.dt);
    if (cfl >= 0.5)
        throw std::invalid_argument("evolve: CFL violation at start (max|u| dt/dx = " +
                                    std::to_string(cfl) + " >= 0.5)");

    // step indices that get a stored snapshot
    std::set<long long> snap_steps;
    snap_steps.insert(0);
    snap_steps.insert(n_steps);
    for (long long s = opts.snapshot_stride; s < n_steps; s += opts.snapshot_stride)
        snap_steps.insert(s);
    for (double te : opts.extra_snapshot_times) {
        if (te < -1e-12 || te > horizon * (1.0 + 1e-12))
            throw std::invalid_argument("evolve: extra snapshot time outside [0, horizon]");
        snap_steps.insert(std::clamp(std::llround(te / opts.dt), 0LL, n_steps));
    }

    Trajectory traj;
    traj.grid = u.grid;
    traj.dt_policy = {"if_rk4", opts.dt, opts.snapshot_stride};

    SolveReport report;
    report.cfl_at_start = cfl;
    report.outcome = Outcome::completed;

    SpectralNorms nm = measure(u);
    double hhalf0 = nm.hhalf;
    NormSample sample{0.0, nm.l2, nm.hhalf, nm.h1, 0.0, nm.tail, 0.0};
    report.norm_history.push_back(sample);
    traj.times.push_back(0.0);
    traj.snapshots.push_back(u);

    double diss_cum = 0.0;           // RK4-stage integral of ||grad u||^2
    double x4_cum = 0.0;             // trapezoid integral of ||u||_H1^4
    double prev_h1 = nm.h1;
    double prev_sample_t = 0.0;

    // stage weights h/6 * {1,2,2,1} applied to the stage dissipation readings
    std::array<double, 4> stage_g{};
    StageRhs rhs = [&stage_g](const SpectralVelocity& state, double, int stage) {
        stage_g[size_t(stage)] = measure(state).h1;
        return convection_rhs(state);
    };

    bool stopped = false;
    long long step = 0;
    for (step = 1; step <= n_steps && !stopped; ++step) {
        double t_prev = double(step - 1) * opts.dt;
        if_rk4_step(u, t_prev, opts.dt, rhs);
        u = leray_project(u);
        hermitian_symmetrize(u);
        remove_mean(u);
        diss_cum += opts.dt / 6.0 *
                    (stage_g[0] * stage_g[0] + 2.0 * stage_g[1] * stage_g[1] +
                     2.0 * stage_g[2] * stage_g[2] + stage_g[3] * stage_g[3]);

        double t = double(step) * opts.dt;
        bool is_sample = (step % opts.norm_stride == 0) || step == n_steps;
        if (is_sample) {
            nm = measure(u);
            x4_cum += 0.5 * (prev_h1 * prev_h1 * prev_h1 * prev_h1 +
                             nm.h1 * nm.h1 * nm.h1 * nm.h1) *
                      (t - prev_sample_t);
            prev_h1 = nm.h1;
            prev_sample_t = t;
            sample = NormSample{t,      nm.l2, nm.hhalf,
                                nm.h1,  std::pow(x4_cum, 0.25), nm.tail,
                                diss_cum};
            report.norm_history.push_back(sample);
            if (!nm.finite()) {
                report.outcome = Outcome::underresolved;
                report.note = "nonfinite values encountered";
                stopped = true;
            } else if (opts.caps) {
                if (auto hit = check_caps(sample, hhalf0, *opts.caps)) {
                    report.outcome = *hit;
                    report.note = "early stop: cap crossed";
                    stopped = true;
                }
            }
        }
        if (snap_steps.count(step) || stopped) {
            traj.times.push_back(t);
            traj.snapshots.push_back(u);
        }
        if (stopped) {
            report.t_end = t;
            break;
        }
    }
    if (!stopped) report.t_end = horizon;
    return {std::move(traj), std::move(report)};
}

}  // namespace nscrit
