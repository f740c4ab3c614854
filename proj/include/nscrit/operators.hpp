#pragma once

#include "nscrit/field.hpp"

namespace nscrit {

// Mode-diagonal operators.  All act on the full stored spectrum, preserve
// Hermitian symmetry, and leave the zero mode at zero.

// P_ij(k) = delta_ij - k_i k_j / |k|^2; idempotent, annihilates gradients
SpectralVelocity leray_project(const SpectralVelocity& u);

// R_i R_j with multiplier -k_i k_j / |k|^2 (i, j in 0..2)
ScalarSpectralField riesz_multiply(int i, int j, const ScalarSpectralField& f);

// grad f   (component i gets i*k_i f(k))
SpectralVelocity gradient(const ScalarSpectralField& f);

// div u = i k . u(k); exactly zero after leray_project
ScalarSpectralField divergence(const SpectralVelocity& u);

// (-Laplacian)^s with multiplier |k|^{2s}; s may be fractional or negative
// (negative s is fine because the zero mode stays pinned at zero).
// Composition law: laplacian_power(laplacian_power(f, s), t) = (f, s+t),
// and div(grad f) = -laplacian_power(f, 1).
ScalarSpectralField laplacian_power(const ScalarSpectralField& f, double s);
SpectralVelocity laplacian_power(const SpectralVelocity& u, double s);

// heat semigroup e^{t Laplacian}: multiplier exp(-|k|^2 t), t >= 0
void heat_multiply_inplace(SpectralVelocity& u, double t);

}  // namespace nscrit
