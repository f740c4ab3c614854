#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "nscrit/trajectory.hpp"

namespace nscrit {

// exact viscous semigroup: multiply modes by exp(-|k|^2 t); t >= 0
SpectralVelocity heat_propagate(const SpectralVelocity& u0, double t);

// advective CFL number max|u| * dt / dx of a candidate step size
double cfl_number(const SpectralVelocity& u, double dt);

// early-stop thresholds checked at every norm sample, in this order:
//   1. tail_fraction > tail_threshold           -> underresolved
//   2. hhalf > hhalf_growth_factor * hhalf(0)   -> blowup_proxy
//   3. cumulative X norm > x_norm_cap           -> blowup_proxy
// The ordering matters: a run that loses resolution is reported as
// underresolved even if the growth cap would also have fired.  These are
// heuristics about the truncated system, not statements about the PDE.
struct Caps {
    double hhalf_growth_factor = 20.0;
    double tail_threshold = 1e-3;
    double x_norm_cap = std::numeric_limits<double>::infinity();
};

struct EvolveOptions {
    double dt = 1e-3;
    int snapshot_stride = 1;                  // store every k-th step
    std::vector<double> extra_snapshot_times; // rounded to the step lattice
    int norm_stride = 1;                      // sample norms every k-th step
    std::optional<Caps> caps;                 // no early stopping if unset
};

// Fourth-order integrating-factor RK4 on the dealiased Galerkin system
//   du/dt = -|k|^2 u - P div(u (x) u).
// The viscous factor is exact; the dissipation integral in the norm history
// is accumulated through the same RK4 stages, so the energy budget
// E(t) + 2 int_0^t ||grad u||^2 closes to the scheme's own order.
// Preconditions: u0 divergence-free (defect <= 1e-8), horizon an integer
// multiple of dt, advective CFL at the initial state below 0.5.
std::pair<Trajectory, SolveReport> evolve(const SpectralVelocity& u0,
                                          double horizon,
                                          const EvolveOptions& opts);

// re-scan a norm history against caps; first crossing decides
Outcome detect_blowup_proxy(const std::vector<NormSample>& history, const Caps& caps);

// Generic integrating-factor RK4 stepper used by evolve and by the
// perturbation solver.  rhs(state, time, stage) returns the non-stiff term;
// stage runs 0..3 with the conventional weights h/6 * {1,2,2,1}, letting
// callers accumulate time integrals of stage quantities to fourth order.
using StageRhs = std::function<SpectralVelocity(const SpectralVelocity&, double, int)>;
void if_rk4_step(SpectralVelocity& u, double t, double dt, const StageRhs& rhs);

}  // namespace nscrit
