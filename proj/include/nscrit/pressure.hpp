#pragma once

#include <array>

#include "nscrit/field.hpp"

namespace nscrit {

struct Ball {
    std::array<double, 3> center{0.0, 0.0, 0.0};
    double radius = 0.0;
};

// Pressure recovered from the velocity:
//   p(k) = -(k_i k_j / |k|^2) (u_i u_j)^(k),   p(0) = 0.
// Products are formed on the dealiased collocation lattice, so the Poisson
// identity |k|^2 p = div(div(u (x) u)) holds exactly against nonlinear_term.
ScalarSpectralField pressure_from_velocity(const SpectralVelocity& u);

// Near-field / far-field pressure decomposition around a ball.  chi is a
// mollified ball indicator (1 inside radius - width, 0 outside radius, a
// quintic smoothstep across a transition band of mollify_cells lattice
// cells) and
//   p_tilde = R_i R_j (chi u_i u_j),   h = p - p_tilde,
// so h is harmonic inside the shrunken ball up to the spectral truncation of
// the windowed products.  Requires radius < box_length / 4 so the window
// fits without wrapping onto itself.
struct WindowedPressure {
    ScalarSpectralField p;        // full pressure
    ScalarSpectralField p_tilde;  // local (windowed) part
    ScalarSpectralField h;        // remainder, near-harmonic in the ball
    Ball ball;
    double mollify_width = 0.0;   // transition band in physical units
};

WindowedPressure windowed_pressure_split(const SpectralVelocity& u, const Ball& ball,
                                         double mollify_cells = 2.0);

// Interior-oscillation ratio of a near-harmonic remainder:
//   mean_{B(x0, r_small)} |h - <h>_small|^gamma
//   ------------------------------------------------
//   (r_small/r_big)^gamma * mean_{B(x0, r_big)} |h|^gamma
// Bounded by a dimensionless constant when h is harmonic in B(x0, r_big).
// Requires r_small <= r_big / 2 and r_big < box_length / 4, and both balls
// must contain enough lattice points to average over.
double harmonic_oscillation_ratio(const ScalarSpectralField& h,
                                  const std::array<double, 3>& center,
                                  double r_small, double r_big, double gamma = 1.0);

}  // namespace nscrit
