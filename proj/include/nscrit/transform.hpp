#pragma once

#include "nscrit/field.hpp"

namespace nscrit {

// Complex-to-complex 3D transforms on the full logical spectrum.  Forward
// (physical -> spectral) divides by n^3 so coefficients are Fourier-series
// amplitudes; backward applies no scaling.  Plans are FFTW_ESTIMATE, cached
// per grid size, and executed out-of-place, so results are reproducible and
// calls are safe from multiple threads.

// low-level transforms between caller-owned buffers (in != out, length n^3)
void fft_forward(const Grid& grid, const Complex* in, Complex* out);
void fft_backward(const Grid& grid, const Complex* in, Complex* out);

PhysicalField to_physical(const SpectralVelocity& u);
PhysicalField to_physical(const ScalarSpectralField& f);

// round trip is exact to machine precision; the forward output is
// re-symmetrized so the Hermitian invariant holds exactly
SpectralVelocity to_spectral_velocity(const PhysicalField& f);
ScalarSpectralField to_spectral_scalar(const PhysicalField& f);

}  // namespace nscrit
