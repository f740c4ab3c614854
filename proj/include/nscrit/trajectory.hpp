#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nscrit/field.hpp"

namespace nscrit {

enum class Outcome { completed, blowup_proxy, underresolved };

std::string outcome_name(Outcome o);

// per-sample scalar series recorded while stepping; dissipation_cum is the
// stage-accurate running integral of ||grad u||^2 (not written to CSV, used
// by the energy budget checks)
struct NormSample {
    double time = 0.0;
    double l2 = 0.0;
    double hhalf = 0.0;
    double h1 = 0.0;
    double x_norm_cum = 0.0;      // (integral_0^t ||u||_{H1}^4)^{1/4}
    double tail_fraction = 0.0;
    double dissipation_cum = 0.0;
};

struct DtPolicy {
    std::string scheme;  // "if_rk4", "heat", "picard"
    double dt = 0.0;
    int snapshot_stride = 1;
};

// snapshots of a single run; times are strictly increasing and start at the
// initial time of the run (0 for all current drivers)
struct Trajectory {
    Grid grid;
    std::vector<double> times;
    std::vector<SpectralVelocity> snapshots;
    DtPolicy dt_policy;

    const SpectralVelocity& at(std::size_t i) const { return snapshots[i]; }
    double horizon() const { return times.empty() ? 0.0 : times.back(); }

    // index of the snapshot nearest to t (times must be nonempty)
    std::size_t nearest_index(double t) const;
    // linear interpolation between bracketing snapshots; t must lie within
    // [times.front(), times.back()] up to a small slack
    SpectralVelocity interpolate(double t) const;
};

// snapshot-wise difference; requires matching grids and times
Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b);

// space-time norm (integral_0^T ||u(t)||_{H1}^4 dt)^{1/4} by trapezoid over
// the stored snapshot times; T must lie within the trajectory's range
double x_norm(const Trajectory& traj, double T);

struct SolveReport {
    Outcome outcome = Outcome::completed;
    double t_end = 0.0;
    std::vector<NormSample> norm_history;
    std::optional<int> picard_iterations;
    std::vector<double> picard_increments;  // successive X-norm differences
    double cfl_at_start = 0.0;
    std::string note;
};

}  // namespace nscrit
