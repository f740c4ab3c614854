#pragma once

// Higher-level numerical experiments built on the solver: exact scaling
// covariance between nested resolutions, weak-vs-strong perturbation
// convergence, critical-amplitude bisection, and the background/perturbation
// split evolution.

#include <functional>
#include <vector>

#include "nscrit/initial_data.hpp"
#include "nscrit/solver.hpp"

namespace nscrit {

// Run body(i) for i in [0, count) on `workers` threads (1 = plain loop).
// Bodies must write results only into caller-owned slots indexed by i; the
// pool provides no ordering guarantees beyond the final join. Exceptions from
// bodies are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& body);

// The symmetry u(x,t) -> lambda u(lambda x, lambda^2 t) maps solutions to
// solutions. On a fixed box with an integer lambda it maps the n-point
// Galerkin system exactly onto the even-mode subsystem of the (lambda n)-point
// system when dealias caps line up (lambda * cap_coarse is the largest
// multiple of lambda inside cap_fine), so the two runs must agree to roundoff,
// not merely to discretization order.
struct ScalingCovarianceResult {
    int n_coarse = 0;
    int n_fine = 0;
    int lambda = 0;
    double horizon_coarse = 0.0;
    // matched modes at matched times: max |u_f(lambda m) - lambda u_c(m)|
    // relative to the largest matched coefficient
    double max_rel_coeff_error = 0.0;
    // largest fine coefficient with no coarse preimage (0 in exact arithmetic)
    double max_unmatched_mag = 0.0;
    // fixed-box norm law check at s = 1/2: fine norm vs lambda^{3/2} coarse
    double hhalf_rel_error = 0.0;
};

ScalingCovarianceResult scaling_covariance_experiment(const SpectralVelocity& u0_coarse,
                                                      int lambda, double horizon,
                                                      double dt);

enum class PerturbationKind {
    modulation,   // fixed-norm single-mode wiggles at growing frequency: weak null
    translation,  // bump perturbation sliding to a limit position: strong null
};

struct WeakConvergenceCase {
    double parameter = 0.0;     // frequency k, or shift distance
    double delta_hhalf = 0.0;   // modulation: ||delta_k||; translation: ||delta_j - delta_*||
    double weak_pairing = 0.0;  // |<delta - delta_*, w>| against a fixed smooth witness
    double final_l2_diff = 0.0;
    double final_hhalf_diff = 0.0;
};

struct WeakConvergenceResult {
    PerturbationKind kind{};
    std::vector<WeakConvergenceCase> cases;
    bool diffs_strictly_decreasing = false;  // final_l2_diff along the family
};

// Evolve base and base+delta for each parameter and record how far the
// solutions drift apart by the horizon. For `modulation` the perturbations
// share one critical norm (delta_amplitude) while their pairings against a
// smooth witness vanish; the solution differences must still vanish along the
// family. For `translation` the perturbations converge strongly to the
// parameter-0 member, giving the classical continuity control. params are
// frequencies (modulation) or dyadic shift exponents j, shift = L/2^j
// (translation).
WeakConvergenceResult weak_convergence_experiment(const SpectralVelocity& base,
                                                  PerturbationKind kind,
                                                  const std::vector<int>& params,
                                                  double delta_amplitude, double horizon,
                                                  const EvolveOptions& opts,
                                                  int workers = 1);

enum class BisectionStatus { converged, invalid_bracket, underresolved, max_iterations };

const char* bisection_status_name(BisectionStatus s);

struct BisectionRun {
    double amplitude = 0.0;
    Outcome outcome = Outcome::completed;
    double t_end = 0.0;
};

struct AmplitudeBisectionResult {
    BisectionStatus status = BisectionStatus::invalid_bracket;
    double lower = 0.0;  // largest amplitude seen completing
    double upper = 0.0;  // smallest amplitude seen tripping the proxy
    std::vector<BisectionRun> runs;
};

// Bisect the amplitude between a completing run (amp_lo) and one that trips
// the blowup proxy (amp_hi). proto.amplitude is overwritten per probe.
// opts.caps must be set. An underresolved probe aborts the search: past that
// point the proxy would measure the grid, not the flow.
AmplitudeBisectionResult amplitude_bisection(const Grid& grid, InitialDataSpec proto,
                                             double amp_lo, double amp_hi,
                                             double horizon, const EvolveOptions& opts,
                                             double rel_tol, int max_iters);

// Perturbation evolution around a stored background trajectory a:
//   v_t - lap v + P[div(a (x) v) + div(v (x) a) + div(v (x) v)] = 0
// stepped with the same integrating-factor RK4 as the main solver, reading a
// at stage times by linear interpolation between its snapshots. The cross
// term c(t) = <div(a (x) v), v> (the only energy-exchange term: the other two
// pair to zero against v) and the dissipation are accumulated through the
// RK4 stages.
struct PerturbationReport {
    Trajectory trajectory;
    std::vector<double> sample_times;
    std::vector<double> l2_history;
    std::vector<double> h1_history;
    double v0_l2_sq = 0.0;
    double vT_l2_sq = 0.0;
    double dissipation_cum = 0.0;  // int ||grad v||^2
    double cross_cum = 0.0;        // int c(t)
    // pieces of the bound |int c| <= C ||a||_{L4 H1} sup||v||^{1/2} ||grad v||^{3/2}
    double a_l4h1 = 0.0;
    double v_sup_l2 = 0.0;
    double grad_v_l2l2 = 0.0;
    double cross_bound_ratio = 0.0;
};

PerturbationReport solve_perturbation(const Trajectory& a, const SpectralVelocity& v0,
                                      double horizon, const EvolveOptions& opts);

}  // namespace nscrit
