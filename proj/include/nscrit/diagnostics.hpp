#pragma once

#include <map>
#include <string>
#include <vector>

#include "nscrit/pressure.hpp"
#include "nscrit/test_function.hpp"
#include "nscrit/trajectory.hpp"

namespace nscrit {

// Q(z0, r) = B(x0, r) x (t_top - r^2, t_top): a backward parabolic cylinder
// anchored at its top time
struct ParabolicCylinder {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double t_top = 0.0;
    double radius = 0.0;
};

// B(x0, r) x (0, r^2): a cylinder anchored at the initial time
struct TildeCylinder {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double radius = 0.0;
};

// labeled scalar series on a common strictly increasing time axis
struct DiagnosticsRecord {
    std::vector<double> times;
    std::map<std::string, std::vector<double>> series;

    void set_times(std::vector<double> t);  // validates monotonicity
    void add_series(const std::string& name, std::vector<double> values);
};

// Scaled local space-time concentration
//   r^{-2} int int_{Q(z0,r)} |u|^3 + |p - <p>_{B(x0,r)}(t)|^{3/2}
// with p recovered from u and <p> the ball average at each time.  Snapshots
// inside the time window must be spaced at most r^2/8 apart and cover both
// window ends to the same gap; the time integral is Simpson on uniform
// stretches with trapezoid fallback.  Scales like r^3 near regular points.
double ckn_quantity(const Trajectory& traj, const ParabolicCylinder& cyl);

// strict smallness test against the regularity threshold
enum class PointClass { small_regular, not_small };
PointClass classify_point(double ckn_value, double eps0 = 0.05);

// Local energy identity tested against a space-time bump phi(x) psi(t) whose
// temporal support sits strictly inside the trajectory's range:
//   lhs = 2 II |grad u|^2 phi psi
//   rhs = II |u|^2 (phi psi' + (Lap phi) psi) + II (|u|^2 + 2p) (u . grad phi) psi
// (the heat-term reading: the multiplier of |u|^2 is phi_t + Lap phi).
// residual_rel = |rhs - lhs| / lhs; near zero for resolved smooth solutions.
struct LocalEnergyResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double residual_rel = 0.0;
};

LocalEnergyResult local_energy_residual(const Trajectory& traj, const SpaceBump& phi,
                                        const TimeBump& psi);

// Initial-time variant with a decreasing cutoff psi(t), psi(0) = 1,
// psi(t_cut) = 0:
//   rhs = int |u0|^2 phi + II |u|^2 ((Lap phi) psi + phi psi')
//         + II (|u|^2 + 2p)(u . grad phi) psi
//   lhs = 2 II |grad u|^2 phi psi
LocalEnergyResult init_energy_residual(const Trajectory& traj, const SpaceBump& phi,
                                       double t_cut);

// slope of log ||(u(t) - u(0)) w||_{L2} vs log t over the earliest snapshots,
// with w a spatial bump weight; gauges strong local attainment of the data
double initial_attainment_rate(const Trajectory& traj, const SpaceBump& w, int points = 4);

// E(Q~)^2 = sup_{0 < t <= r^2} ||u||^2_{L2(B)} + II_{Q~} |grad u|^2
// (requires r^2 within the trajectory horizon)
double local_energy_norm_sq(const Trajectory& traj, const TildeCylinder& cyl);

// t^{(l+1)/2} sup_x |grad^l u(t)| for each snapshot time t > 0; the Frobenius
// magnitude runs over all l-fold derivative combinations and components.
// Orders 0..3.
DiagnosticsRecord decay_diagnostic(const Trajectory& traj, int order);

// sup over Q(z0, r/2) of |grad^k u|, scaled by r^{1+k}; the dimensionless
// interior derivative bound
double derivative_bound_check(const Trajectory& traj, const ParabolicCylinder& cyl,
                              int order);

// max over snapshot pairs in Q(z0, r/2) of
//   sup_{B(x0, r/2)} |u(x,t) - u(x,t')| / |t - t'|^{1/3}
// (needs at least 4 snapshots in the half cylinder's time window)
double time_holder_quotient(const Trajectory& traj, const ParabolicCylinder& cyl);

// one cylinder of a sweep: the concentration quantity, its classification,
// and the initial-time local energy norm of the matching tilde cylinder
struct SweepRow {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double t_top = 0.0;
    double radius = 0.0;
    double ckn = 0.0;
    PointClass classification = PointClass::not_small;
    double energy_sq = 0.0;      // E(Q~(center, radius))^2
    double energy_over_r = 0.0;  // E^2 / r, the scale-invariant ratio
};

std::vector<SweepRow> cylinder_sweep(const Trajectory& traj,
                                     const std::vector<std::array<double, 3>>& centers,
                                     const std::vector<double>& radii,
                                     const std::vector<double>& t_tops,
                                     double eps0 = 0.05);

}  // namespace nscrit
