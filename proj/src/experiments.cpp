#include "nscrit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "nscrit/nonlinear.hpp"
#include "nscrit/norms.hpp"
#include "nscrit/operators.hpp"

namespace nscrit {

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& body) {
    if (workers < 1) throw std::invalid_argument("parallel_for: workers must be >= 1");
    if (count == 0) return;
    if (workers == 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto drain = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int nthreads = int(std::min<std::size_t>(std::size_t(workers), count));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

ScalingCovarianceResult scaling_covariance_experiment(const SpectralVelocity& u0_coarse,
                                                      int lambda, double horizon,
                                                      double dt) {
    if (lambda < 2)
        throw std::invalid_argument("scaling covariance: lambda must be >= 2");
    const Grid& gc = u0_coarse.grid;
    Grid gf(gc.n * lambda, gc.box_length, gc.dealias_fraction);
    // every scaled coarse mode must stay strictly inside the fine cap,
    // otherwise the two Galerkin systems are not nested
    if (lambda * gc.max_retained_mode() > gf.max_retained_mode())
        throw std::invalid_argument("scaling covariance: caps do not nest");

    SpectralVelocity u0_fine = rescale_data(u0_coarse, lambda, gf);

    long long n_steps = std::llround(horizon / dt);
    EvolveOptions oc;
    oc.dt = dt;
    oc.snapshot_stride = int(std::max<long long>(n_steps, 1));
    oc.norm_stride = int(std::max<long long>(n_steps, 1));
    auto [traj_c, rep_c] = evolve(u0_coarse, horizon, oc);

    double lam2 = double(lambda) * double(lambda);
    EvolveOptions of = oc;
    of.dt = dt / lam2;
    auto [traj_f, rep_f] = evolve(u0_fine, horizon / lam2, of);

    const SpectralVelocity& uc = traj_c.snapshots.back();
    const SpectralVelocity& uf = traj_f.snapshots.back();

    ScalingCovarianceResult r;
    r.n_coarse = gc.n;
    r.n_fine = gf.n;
    r.lambda = lambda;
    r.horizon_coarse = horizon;

    // flag every fine index that is the image of a coarse mode
    std::vector<char> matched(gf.num_modes(), 0);
    double sup_scaled = 0.0;
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < gc.num_modes(); ++i)
            sup_scaled = std::max(sup_scaled, double(lambda) * std::abs(uc.coeffs[d][i]));

    double worst = 0.0;
    auto wrap = [&](int m) { return m >= 0 ? m : m + gf.n; };
    for (int a = 0; a < gc.n; ++a)
        for (int b = 0; b < gc.n; ++b)
            for (int c = 0; c < gc.n; ++c) {
                std::size_t ic = gc.index(a, b, c);
                std::size_t fi = gf.index(wrap(lambda * gc.alias(a)),
                                          wrap(lambda * gc.alias(b)),
                                          wrap(lambda * gc.alias(c)));
                matched[fi] = 1;
                for (int d = 0; d < 3; ++d) {
                    double err =
                        std::abs(uf.coeffs[d][fi] - double(lambda) * uc.coeffs[d][ic]);
                    worst = std::max(worst, err);
                }
            }
    r.max_rel_coeff_error = sup_scaled > 0.0 ? worst / sup_scaled : worst;

    double unmatched = 0.0;
    for (std::size_t i = 0; i < gf.num_modes(); ++i) {
        if (matched[i]) continue;
        for (int d = 0; d < 3; ++d)
            unmatched = std::max(unmatched, std::abs(uf.coeffs[d][i]));
    }
    r.max_unmatched_mag = sup_scaled > 0.0 ? unmatched / sup_scaled : unmatched;

    double hc = hs_norm(uc, 0.5) * std::pow(double(lambda), 1.5);
    double hf = hs_norm(uf, 0.5);
    r.hhalf_rel_error = hc > 0.0 ? std::abs(hf - hc) / hc : std::abs(hf);
    return r;
}

namespace {

double pairing_l2(const SpectralVelocity& f, const SpectralVelocity& g) {
    double s = 0.0;
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < f.coeffs[d].size(); ++i)
            s += (f.coeffs[d][i] * std::conj(g.coeffs[d][i])).real();
    return s * std::pow(f.grid.box_length, 3);
}

// single-mode transverse wiggle delta_k = A_k (0, cos(2 pi k x1 / L), 0);
// A_k is chosen so the order-1/2 norm equals `norm`
SpectralVelocity modulation_delta(const Grid& g, int k, double norm) {
    if (k < 1 || k > g.max_retained_mode())
        throw std::invalid_argument("modulation frequency outside the retained band");
    double kmag = kTwoPi * k / g.box_length;
    double box3 = std::pow(g.box_length, 3);
    // single cosine mode at amplitude A has ||.||_{H^{1/2}}^2 = |k| A^2 L^3 / 2
    double amp = norm * std::sqrt(2.0 / (kmag * box3));
    SpectralVelocity d(g);
    std::size_t ip = g.index(k, 0, 0);
    std::size_t im = g.index(g.n - k, 0, 0);
    d.coeffs[1][ip] = Complex(0.5 * amp, 0.0);
    d.coeffs[1][im] = Complex(0.5 * amp, 0.0);
    return d;
}

}  // namespace

WeakConvergenceResult weak_convergence_experiment(const SpectralVelocity& base,
                                                  PerturbationKind kind,
                                                  const std::vector<int>& params,
                                                  double delta_amplitude, double horizon,
                                                  const EvolveOptions& opts,
                                                  int workers) {
    if (params.empty())
        throw std::invalid_argument("weak convergence: empty parameter list");
    const Grid& g = base.grid;
    WeakConvergenceResult res;
    res.kind = kind;

    // fixed smooth witness for the weak pairings: a localized bump field
    InitialDataSpec wspec;
    wspec.family = DataFamily::localized_bump;
    wspec.amplitude = 1.0;
    wspec.bump_radius = 0.25 * g.box_length;
    SpectralVelocity witness = make_initial_data(g, wspec);

    // perturbations and, for the translation family, their strong limit
    InitialDataSpec bspec;
    bspec.family = DataFamily::localized_bump;
    bspec.amplitude = delta_amplitude;
    bspec.bump_radius = 0.15 * g.box_length;
    SpectralVelocity bump_limit;
    if (kind == PerturbationKind::translation) bump_limit = make_initial_data(g, bspec);

    std::vector<SpectralVelocity> deltas(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (kind == PerturbationKind::modulation) {
            deltas[i] = modulation_delta(g, params[i], delta_amplitude);
        } else {
            if (params[i] < 0)
                throw std::invalid_argument("translation exponent must be >= 0");
            double shift = g.box_length / std::pow(2.0, params[i]);
            deltas[i] = translate_data(bump_limit, {shift, 0.0, 0.0});
        }
    }

    // reference run: plain base (modulation) or base + limit bump (translation)
    SpectralVelocity ref0 = base;
    if (kind == PerturbationKind::translation) axpy(ref0, Complex(1.0), bump_limit);
    auto [ref_traj, ref_rep] = evolve(ref0, horizon, opts);
    if (ref_rep.outcome != Outcome::completed)
        throw std::runtime_error("weak convergence: reference run stopped early (" +
                                 outcome_name(ref_rep.outcome) + ")");
    const SpectralVelocity& ref_end = ref_traj.snapshots.back();

    res.cases.assign(params.size(), WeakConvergenceCase{});
    std::vector<std::string> failures(params.size());
    parallel_for(params.size(), workers, [&](std::size_t i) {
        WeakConvergenceCase& c = res.cases[i];
        c.parameter = kind == PerturbationKind::modulation
                          ? double(params[i])
                          : g.box_length / std::pow(2.0, params[i]);
        SpectralVelocity diff0 = deltas[i];
        if (kind == PerturbationKind::translation)
            diff0 = subtract(deltas[i], bump_limit);
        c.delta_hhalf = hs_norm(kind == PerturbationKind::modulation ? deltas[i] : diff0,
                                0.5);
        c.weak_pairing = std::abs(pairing_l2(diff0, witness));

        SpectralVelocity u0 = base;
        axpy(u0, Complex(1.0), deltas[i]);
        auto [traj, rep] = evolve(u0, horizon, opts);
        if (rep.outcome != Outcome::completed) {
            failures[i] = outcome_name(rep.outcome);
            return;
        }
        SpectralVelocity d = subtract(traj.snapshots.back(), ref_end);
        c.final_l2_diff = hs_norm(d, 0.0);
        c.final_hhalf_diff = hs_norm(d, 0.5);
    });
    for (std::size_t i = 0; i < failures.size(); ++i)
        if (!failures[i].empty())
            throw std::runtime_error("weak convergence: perturbed run stopped early (" +
                                     failures[i] + ")");

    res.diffs_strictly_decreasing = res.cases.size() >= 2;
    for (std::size_t i = 1; i < res.cases.size(); ++i)
        if (!(res.cases[i].final_l2_diff < res.cases[i - 1].final_l2_diff))
            res.diffs_strictly_decreasing = false;
    return res;
}

const char* bisection_status_name(BisectionStatus s) {
    switch (s) {
        case BisectionStatus::converged: return "converged";
        case BisectionStatus::invalid_bracket: return "invalid_bracket";
        case BisectionStatus::underresolved: return "underresolved";
        case BisectionStatus::max_iterations: return "max_iterations";
    }
    return "unknown";
}

AmplitudeBisectionResult amplitude_bisection(const Grid& grid, InitialDataSpec proto,
                                             double amp_lo, double amp_hi,
                                             double horizon, const EvolveOptions& opts,
                                             double rel_tol, int max_iters) {
    if (!(amp_lo > 0.0) || !(amp_hi > amp_lo))
        throw std::invalid_argument("amplitude_bisection: need 0 < amp_lo < amp_hi");
    if (!opts.caps)
        throw std::invalid_argument("amplitude_bisection: caps must be set");
    if (max_iters < 1)
        throw std::invalid_argument("amplitude_bisection: max_iters must be >= 1");

    AmplitudeBisectionResult res;
    auto probe = [&](double amp) {
        proto.amplitude = amp;
        SpectralVelocity u0 = make_initial_data(grid, proto);
        auto [traj, rep] = evolve(u0, horizon, opts);
        res.runs.push_back({amp, rep.outcome, rep.t_end});
        return rep.outcome;
    };

    Outcome olo = probe(amp_lo);
    Outcome ohi = probe(amp_hi);
    if (olo == Outcome::underresolved || ohi == Outcome::underresolved) {
        res.status = BisectionStatus::underresolved;
        res.lower = amp_lo;
        res.upper = amp_hi;
        return res;
    }
    if (olo != Outcome::completed || ohi != Outcome::blowup_proxy) {
        res.status = BisectionStatus::invalid_bracket;
        res.lower = amp_lo;
        res.upper = amp_hi;
        return res;
    }

    double lo = amp_lo, hi = amp_hi;
    res.status = BisectionStatus::max_iterations;
    for (int it = 0; it < max_iters; ++it) {
        if (hi - lo <= rel_tol * hi) {
            res.status = BisectionStatus::converged;
            break;
        }
        double mid = 0.5 * (lo + hi);
        Outcome o = probe(mid);
        if (o == Outcome::underresolved) {
            res.status = BisectionStatus::underresolved;
            break;
        }
        if (o == Outcome::completed)
            lo = mid;
        else
            hi = mid;
    }
    if (res.status == BisectionStatus::max_iterations && hi - lo <= rel_tol * hi)
        res.status = BisectionStatus::converged;
    res.lower = lo;
    res.upper = hi;
    return res;
}

PerturbationReport solve_perturbation(const Trajectory& a, const SpectralVelocity& v0,
                                      double horizon, const EvolveOptions& opts) {
    const Grid& g = v0.grid;
    if (!(a.grid == g))
        throw std::invalid_argument("solve_perturbation: background grid mismatch");
    if (a.times.empty())
        throw std::invalid_argument("solve_perturbation: empty background trajectory");
    double slack = 1e-9 * std::max(1.0, horizon);
    if (!(horizon > 0.0) || horizon > a.horizon() + slack)
        throw std::invalid_argument(
            "solve_perturbation: horizon exceeds the background trajectory");
    if (!(opts.dt > 0.0)) throw std::invalid_argument("solve_perturbation: dt <= 0");
    long long n_steps = std::llround(horizon / opts.dt);
    if (n_steps < 1 || std::abs(n_steps * opts.dt - horizon) > 1e-9 * horizon)
        throw std::invalid_argument(
            "solve_perturbation: horizon must be an integer multiple of dt");
    if (opts.snapshot_stride < 1)
        throw std::invalid_argument("solve_perturbation: snapshot_stride must be >= 1");

    SpectralVelocity v = v0;
    apply_dealias(v);
    hermitian_symmetrize(v);
    remove_mean(v);

    PerturbationReport rep;
    rep.trajectory.grid = g;
    rep.trajectory.dt_policy = {"if_rk4_perturbation", opts.dt, opts.snapshot_stride};
    rep.v0_l2_sq = hs_norm(v, 0.0);
    rep.v0_l2_sq *= rep.v0_l2_sq;

    auto record = [&](double t) {
        rep.trajectory.times.push_back(t);
        rep.trajectory.snapshots.push_back(v);
        rep.sample_times.push_back(t);
        double l2 = hs_norm(v, 0.0);
        rep.l2_history.push_back(l2);
        rep.h1_history.push_back(hs_norm(v, 1.0));
        rep.v_sup_l2 = std::max(rep.v_sup_l2, l2);
    };
    record(0.0);

    double stage_diss[4];
    double stage_cross[4];
    StageRhs rhs = [&](const SpectralVelocity& state, double ts, int stage) {
        SpectralVelocity a_t = a.interpolate(ts);
        SpectralVelocity nt_av = nonlinear_term(a_t, state);
        SpectralVelocity nt_va = nonlinear_term(state, a_t);
        SpectralVelocity nt_vv = nonlinear_term(state, state);
        double h1 = hs_norm(state, 1.0);
        stage_diss[stage] = h1 * h1;
        stage_cross[stage] = pairing_l2(nt_av, state);
        axpy(nt_av, Complex(1.0), nt_va);
        axpy(nt_av, Complex(1.0), nt_vv);
        SpectralVelocity out = leray_project(nt_av);
        scale(out, -1.0);
        return out;
    };

    for (long long step = 0; step < n_steps; ++step) {
        double t = double(step) * opts.dt;
        if_rk4_step(v, t, opts.dt, rhs);
        v = leray_project(v);
        hermitian_symmetrize(v);
        remove_mean(v);
        if (has_nonfinite(v))
            throw std::runtime_error(
                "solve_perturbation: non-finite values at t = " + std::to_string(t));
        double w = opts.dt / 6.0;
        rep.dissipation_cum +=
            w * (stage_diss[0] + 2.0 * stage_diss[1] + 2.0 * stage_diss[2] + stage_diss[3]);
        rep.cross_cum += w * (stage_cross[0] + 2.0 * stage_cross[1] +
                              2.0 * stage_cross[2] + stage_cross[3]);
        double tn = double(step + 1) * opts.dt;
        if ((step + 1) % opts.snapshot_stride == 0 || step + 1 == n_steps) {
            if (rep.trajectory.times.back() < tn - 1e-12) record(tn);
        }
    }

    rep.vT_l2_sq = rep.l2_history.back() * rep.l2_history.back();
    rep.a_l4h1 = x_norm(a, horizon);
    rep.grad_v_l2l2 = std::sqrt(rep.dissipation_cum);
    double denom = rep.a_l4h1 * std::sqrt(rep.v_sup_l2) *
                   std::pow(rep.grad_v_l2l2, 1.5);
    rep.cross_bound_ratio = denom > 0.0 ? std::abs(rep.cross_cum) / denom : 0.0;
    return rep;
}

}  // namespace nscrit
