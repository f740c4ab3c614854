#pragma once

#include <utility>
#include <vector>

#include "nscrit/solver.hpp"
#include "nscrit/trajectory.hpp"

namespace nscrit {

// P div(u (x) v) evaluated at every stored snapshot time of a pair of
// trajectories sharing one time lattice
std::vector<SpectralVelocity> bilinear_forcing(const Trajectory& u, const Trajectory& v);

// -int_0^t S(t-s) w(s) ds for a forcing series w given on `times`, with w
// linearly interpolated between entries.  The integral is evaluated after the
// substitution s = t - tau^2 on a uniform tau lattice (trapezoid, n_tau
// nodes), which bounds the kernel 2 tau |k| exp(-|k|^2 tau^2) uniformly in k
// and keeps the quadrature second order all the way into the s = t endpoint.
// n_tau <= 0 picks a default tied to the lattice resolution.
SpectralVelocity duhamel_integral(const Grid& grid, const std::vector<double>& times,
                                  const std::vector<SpectralVelocity>& forcing,
                                  double t, int n_tau = 0);

// B(u, v)(t) = -int_0^t S(t-s) P div(u (x) v)(s) ds
SpectralVelocity duhamel_bilinear(const Trajectory& u, const Trajectory& v,
                                  double t, int n_tau = 0);

struct PicardOptions {
    int lattice_points = 33;   // uniform time lattice on [0, horizon]
    double tol = 1e-10;        // absolute X-norm of the successive difference
    int max_iterations = 40;
    int n_tau = 0;             // tau nodes per Duhamel evaluation (0 = auto)
};

// Trajectory-valued fixed-point iteration for the mild formulation
//   u = S(t) u0 + B(u, u)
// on a fixed time lattice.  Convergence is declared when the X norm of the
// successive difference drops below tol; exhaustion of max_iterations (or a
// clearly diverging increment) raises an error quoting the last two
// increments.  The report carries the increment sequence so callers can
// compare contraction ratios against the bilinear-operator prediction.
std::pair<Trajectory, SolveReport> picard_solve(const SpectralVelocity& u0,
                                                double horizon,
                                                const PicardOptions& opts);

}  // namespace nscrit
