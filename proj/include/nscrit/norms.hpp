#pragma once

#include "nscrit/field.hpp"

namespace nscrit {

// Homogeneous Sobolev norm of order s:
//   ||f||_{Hs}^2 = box_length^3 * sum_{k != 0} |k|^{2s} |f(k)|^2,
// consistent with Parseval for the stored amplitude convention (a single mode
// A e cos(k0.x) along unit vector e has Hs norm sqrt(|k0|^{2s} A^2 L^3 / 2)).
// The zero mode is skipped, so s < 0 is well defined for mean-free fields.
double hs_norm(const ScalarSpectralField& f, double s);
double hs_norm(const SpectralVelocity& u, double s);

// lattice L^p quadrature: (cell_volume * sum_x |f(x)|^p)^{1/p} with |f| the
// Euclidean magnitude over components; p >= 1
double lp_norm(const PhysicalField& f, double p);

// max over lattice points of the Euclidean magnitude
double linf_norm(const PhysicalField& f);

// fraction of energy (squared L^2 mass) carried by retained modes whose
// max-norm mode index exceeds two thirds of the retained cap; gauges how
// close the solution sits to the resolution edge
double tail_fraction(const SpectralVelocity& u);

}  // namespace nscrit
