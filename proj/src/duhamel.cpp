#include "nscrit/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nscrit/nonlinear.hpp"
#include "nscrit/norms.hpp"
#include "nscrit/operators.hpp"

namespace nscrit {

std::vector<SpectralVelocity> bilinear_forcing(const Trajectory& u, const Trajectory& v) {
    if (!(u.grid == v.grid))
        throw std::invalid_argument("bilinear_forcing: grid mismatch");
    if (u.times != v.times)
        throw std::invalid_argument("bilinear_forcing: time lattice mismatch");
    std::vector<SpectralVelocity> w;
    w.reserve(u.snapshots.size());
    // nonlinear_term exploits symmetry when both arguments alias the same
    // object, which is the common u == v case in the iteration
    for (std::size_t i = 0; i < u.snapshots.size(); ++i)
        w.push_back(leray_project(nonlinear_term(u.snapshots[i], v.snapshots[i])));
    return w;
}

SpectralVelocity duhamel_integral(const Grid& grid, const std::vector<double>& times,
                                  const std::vector<SpectralVelocity>& forcing,
                                  double t, int n_tau) {
    if (times.size() != forcing.size() || times.empty())
        throw std::invalid_argument("duhamel_integral: series size mismatch");
    if (t < 0.0)
        throw std::invalid_argument("duhamel_integral: negative time");
    double slack = 1e-9 * std::max(1.0, std::abs(times.back()));
    if (t > times.back() + slack)
        throw std::invalid_argument("duhamel_integral: time outside forcing range");

    SpectralVelocity out(grid);
    if (t == 0.0) return out;
    if (n_tau <= 0) {
        std::size_t covered = 0;
        while (covered < times.size() && times[covered] <= t + slack) ++covered;
        n_tau = std::max<int>(129, 4 * int(covered) + 1);
    }
    if (n_tau < 2)
        throw std::invalid_argument("duhamel_integral: n_tau must be >= 2");

    // precompute |k|^2 once per call; the integrand is assembled mode-wise
    int n = grid.n;
    std::size_t m = grid.num_modes();
    std::vector<double> k2(m);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                k2[grid.index(a, b, c)] = grid.k_squared(a, b, c);

    double root = std::sqrt(t);
    double h = root / (n_tau - 1);
    for (int q = 0; q < n_tau; ++q) {
        double tau = q * h;
        double s = t - tau * tau;
        s = std::clamp(s, times.front(), times.back());
        // trapezoid weight times the substitution Jacobian 2 tau
        double wq = (q == 0 || q == n_tau - 1) ? 0.5 : 1.0;
        double common = wq * h * 2.0 * tau;
        if (common == 0.0) continue;  // tau = 0 node contributes nothing

        auto it = std::lower_bound(times.begin(), times.end(), s);
        std::size_t hi = std::min<std::size_t>(std::size_t(it - times.begin()),
                                               times.size() - 1);
        std::size_t lo = hi > 0 ? hi - 1 : 0;
        double wgt = (hi == lo || times[hi] == times[lo])
                         ? 1.0
                         : (s - times[lo]) / (times[hi] - times[lo]);
        const SpectralVelocity& flo = forcing[lo];
        const SpectralVelocity& fhi = forcing[hi];
        for (int d = 0; d < 3; ++d)
            for (std::size_t i = 0; i < m; ++i) {
                Complex w = flo.coeffs[d][i] +
                            wgt * (fhi.coeffs[d][i] - flo.coeffs[d][i]);
                out.coeffs[d][i] -= common * std::exp(-k2[i] * tau * tau) * w;
            }
    }
    return out;
}

SpectralVelocity duhamel_bilinear(const Trajectory& u, const Trajectory& v,
                                  double t, int n_tau) {
    std::vector<SpectralVelocity> w = bilinear_forcing(u, v);
    return duhamel_integral(u.grid, u.times, w, t, n_tau);
}

namespace {

// norm history entries for a lattice trajectory (dissipation by trapezoid;
// picard output is not used for budget checks)
std::vector<NormSample> lattice_history(const Trajectory& traj) {
    std::vector<NormSample> hist;
    double x4 = 0.0, diss = 0.0, prev_h1sq = 0.0, prev_h14 = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const SpectralVelocity& u = traj.snapshots[i];
        NormSample s;
        s.time = traj.times[i];
        s.l2 = hs_norm(u, 0.0);
        s.hhalf = hs_norm(u, 0.5);
        s.h1 = hs_norm(u, 1.0);
        s.tail_fraction = tail_fraction(u);
        double h1sq = s.h1 * s.h1;
        double h14 = h1sq * h1sq;
        if (i > 0) {
            double dt = traj.times[i] - traj.times[i - 1];
            x4 += 0.5 * (prev_h14 + h14) * dt;
            diss += 0.5 * (prev_h1sq + h1sq) * dt;
        }
        prev_h1sq = h1sq;
        prev_h14 = h14;
        s.x_norm_cum = std::pow(x4, 0.25);
        s.dissipation_cum = diss;
        hist.push_back(s);
    }
    return hist;
}

}  // namespace

std::pair<Trajectory, SolveReport> picard_solve(const SpectralVelocity& u0,
                                                double horizon,
                                                const PicardOptions& opts) {
    if (!(horizon > 0.0))
        throw std::invalid_argument("picard_solve: horizon must be positive");
    if (opts.lattice_points < 2)
        throw std::invalid_argument("picard_solve: need at least 2 lattice points");
    if (divergence_defect(u0) > 1e-8)
        throw std::invalid_argument("picard_solve: initial data is not divergence-free");

    SpectralVelocity start = dealiased(u0);
    hermitian_symmetrize(start);
    remove_mean(start);

    int np = opts.lattice_points;
    double h = horizon / (np - 1);

    // zeroth iterate: the free evolution S(t) u0
    Trajectory base;
    base.grid = start.grid;
    base.dt_policy = {"picard", h, 1};
    for (int i = 0; i < np; ++i) {
        base.times.push_back(i * h);
        base.snapshots.push_back(heat_propagate(start, i * h));
    }

    Trajectory current = base;
    SolveReport report;
    report.outcome = Outcome::completed;
    report.t_end = horizon;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        std::vector<SpectralVelocity> w = bilinear_forcing(current, current);
        Trajectory next;
        next.grid = base.grid;
        next.times = base.times;
        next.dt_policy = base.dt_policy;
        next.snapshots.reserve(np);
        for (int i = 0; i < np; ++i) {
            SpectralVelocity ui = base.snapshots[i];
            axpy(ui, Complex(1.0, 0.0),
                 duhamel_integral(base.grid, base.times, w, base.times[i], opts.n_tau));
            next.snapshots.push_back(std::move(ui));
        }
        double inc = x_norm(trajectory_difference(next, current), horizon);
        report.picard_increments.push_back(inc);
        current = std::move(next);
        if (inc <= opts.tol) {
            report.picard_iterations = iter + 1;
            report.norm_history = lattice_history(current);
            return {std::move(current), std::move(report)};
        }
        std::size_t k = report.picard_increments.size();
        if (!std::isfinite(inc) ||
            (k >= 2 && inc > 1e4 * report.picard_increments.front())) {
            throw std::runtime_error(
                "picard_solve: iteration diverging, last increments " +
                std::to_string(report.picard_increments[k - 2]) + " and " +
                std::to_string(inc));
        }
    }
    std::size_t k = report.picard_increments.size();
    throw std::runtime_error(
        "picard_solve: no convergence within max_iterations, last increments " +
        (k >= 2 ? std::to_string(report.picard_increments[k - 2]) + " and " : "") +
        std::to_string(report.picard_increments.back()));
}

}  // namespace nscrit
