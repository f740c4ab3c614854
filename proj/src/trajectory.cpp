#include "nscrit/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nscrit/norms.hpp"

namespace nscrit {

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::completed: return "completed";
        case Outcome::blowup_proxy: return "blowup_proxy";
        case Outcome::underresolved: return "underresolved";
    }
    return "unknown";
}

std::size_t Trajectory::nearest_index(double t) const {
    if (times.empty())
        throw std::invalid_argument("trajectory: empty");
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end()) return times.size() - 1;
    std::size_t hi = std::size_t(it - times.begin());
    if (hi == 0) return 0;
    return (t - times[hi - 1] <= times[hi] - t) ? hi - 1 : hi;
}

SpectralVelocity Trajectory::interpolate(double t) const {
    if (times.empty())
        throw std::invalid_argument("trajectory: empty");
    double slack = 1e-9 * std::max(1.0, std::abs(times.back()));
    if (t < times.front() - slack || t > times.back() + slack)
        throw std::invalid_argument("trajectory: time outside stored range");
    t = std::clamp(t, times.front(), times.back());
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end()) return snapshots.back();
    std::size_t hi = std::size_t(it - times.begin());
    if (hi == 0 || times[hi] == t) return snapshots[hi];
    std::size_t lo = hi - 1;
    double w = (t - times[lo]) / (times[hi] - times[lo]);
    SpectralVelocity out = snapshots[lo];
    scale(out, 1.0 - w);
    axpy(out, Complex(w, 0.0), snapshots[hi]);
    return out;
}

Trajectory trajectory_difference(const Trajectory& a, const Trajectory& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("trajectory_difference: grid mismatch");
    if (a.times.size() != b.times.size())
        throw std::invalid_argument("trajectory_difference: time lattice mismatch");
    for (std::size_t i = 0; i < a.times.size(); ++i)
        if (std::abs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, std::abs(a.times[i])))
            throw std::invalid_argument("trajectory_difference: time lattice mismatch");
    Trajectory d;
    d.grid = a.grid;
    d.times = a.times;
    d.dt_policy = a.dt_policy;
    d.snapshots.reserve(a.snapshots.size());
    for (std::size_t i = 0; i < a.snapshots.size(); ++i)
        d.snapshots.push_back(subtract(a.snapshots[i], b.snapshots[i]));
    return d;
}

double x_norm(const Trajectory& traj, double T) {
    if (traj.times.empty())
        throw std::invalid_argument("x_norm: empty trajectory");
    double slack = 1e-9 * std::max(1.0, T);
    if (T < traj.times.front() - slack || T > traj.times.back() + slack)
        throw std::invalid_argument("x_norm: T outside trajectory range");
    double acc = 0.0;
    double prev_t = traj.times[0];
    double prev_g = std::pow(hs_norm(traj.snapshots[0], 1.0), 4);
    for (std::size_t i = 1; i < traj.times.size() && prev_t < T; ++i) {
        double t = std::min(traj.times[i], T);
        double g = std::pow(hs_norm(traj.snapshots[i], 1.0), 4);
        if (traj.times[i] > T && traj.times[i] > traj.times[i - 1]) {
            // partial last interval: linear interpolation of the integrand
            double w = (T - traj.times[i - 1]) / (traj.times[i] - traj.times[i - 1]);
            g = prev_g + w * (g - prev_g);
        }
        acc += 0.5 * (prev_g + g) * (t - prev_t);
        prev_t = t;
        prev_g = g;
    }
    return std::pow(acc, 0.25);
}

}  // namespace nscrit
