#pragma once

// Frequency splitting u0 = a0 + v0 where a0 carries the high-frequency tail
// with critical norm at most eta and v0 is the finite-energy remainder.
//
// The cutoff is a smooth radial high-pass: with transition shell
// [R/2, R], phi_R(|k|) = 0 below R/2, 1 above R, quintic smoothstep between,
// and a0 = phi_R * u0, v0 = u0 - a0. The map R -> ||a0(R)||_{H^{1/2}} is
// continuous and nonincreasing, vanishes once R/2 clears the highest retained
// mode, and tends to ||u0|| as R -> 0, so the minimal R with norm <= eta
// always exists for eta > 0; it is located by bisection.

#include "nscrit/field.hpp"

namespace nscrit {

struct CalderonSplit {
    SpectralVelocity a0;  // high-pass part, ||a0||_{H^{1/2}} <= eta
    SpectralVelocity v0;  // remainder, u0 - a0 exactly
    double cutoff_radius = 0.0;
    double a0_hhalf = 0.0;
    double v0_l2 = 0.0;
    bool eta_reached = true;
    double achievable_min = 0.0;  // norm at the widest admissible cutoff
};

// eta must be positive. If eta >= ||u0||_{H^{1/2}} the whole field goes into
// a0 (cutoff_radius 0, v0 = 0).
CalderonSplit calderon_split(const SpectralVelocity& u0, double eta);

}  // namespace nscrit
