#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "nscrit/grid.hpp"

namespace nscrit {

using Complex = std::complex<double>;
using SpectralArray = std::vector<Complex>;

// Fourier coefficients of a real scalar field.  coeffs[grid.index(a,b,c)] is
// the amplitude of exp(i k.x), so a physical field is recovered by a plain
// inverse DFT with no further scaling.  Invariants: Hermitian symmetry
// f(-k) = conj(f(k)) and zero mean f(0) = 0.
struct ScalarSpectralField {
    Grid grid;
    SpectralArray coeffs;

    ScalarSpectralField() = default;
    explicit ScalarSpectralField(const Grid& g)
        : grid(g), coeffs(g.num_modes()) {}
};

// Fourier coefficients of a real velocity field, one full spectrum per
// component.  Same conventions as ScalarSpectralField plus the divergence
// constraint k.u(k) = 0.
struct SpectralVelocity {
    Grid grid;
    std::array<SpectralArray, 3> coeffs;

    SpectralVelocity() = default;
    explicit SpectralVelocity(const Grid& g) : grid(g) {
        for (auto& c : coeffs) c.assign(g.num_modes(), Complex(0.0));
    }
};

// Real-space samples on the collocation lattice x = (dx*ia, dx*ib, dx*ic),
// stored component-major: values[comp * num_modes + index].
struct PhysicalField {
    Grid grid;
    int components = 0;
    std::vector<double> values;

    PhysicalField() = default;
    PhysicalField(const Grid& g, int ncomp)
        : grid(g), components(ncomp),
          values(std::size_t(ncomp) * g.num_modes(), 0.0) {}

    double& at(int comp, std::size_t idx) {
        return values[std::size_t(comp) * grid.num_modes() + idx];
    }
    double at(int comp, std::size_t idx) const {
        return values[std::size_t(comp) * grid.num_modes() + idx];
    }
    // Euclidean magnitude over components at one lattice point
    double magnitude(std::size_t idx) const;
};

// --- invariant enforcement and measurement ---------------------------------

// overwrite with the Hermitian part: f(k) <- (f(k) + conj(f(-k)))/2.
// Self-conjugate modes (0 and Nyquist combinations) are forced real.
void hermitian_symmetrize(const Grid& grid, SpectralArray& coeffs);
void hermitian_symmetrize(SpectralVelocity& u);

// max |f(-k) - conj(f(k))| over modes, relative to max |f|; 0 for a zero field
double hermitian_defect(const Grid& grid, const SpectralArray& coeffs);
double hermitian_defect(const SpectralVelocity& u);

void remove_mean(ScalarSpectralField& f);
void remove_mean(SpectralVelocity& u);

// max over modes of |k.u(k)| / (|k| |u(k)|), skipping modes with |u| below
// 1e-300; 0 for a zero field
double divergence_defect(const SpectralVelocity& u);

// zero every mode outside the dealias mask (in place)
void apply_dealias(const Grid& grid, SpectralArray& coeffs);
void apply_dealias(SpectralVelocity& u);
void apply_dealias(ScalarSpectralField& f);
SpectralVelocity dealiased(const SpectralVelocity& u);

double max_abs_coeff(const Grid& grid, const SpectralArray& coeffs);
double max_abs_coeff(const SpectralVelocity& u);

bool has_nonfinite(const SpectralVelocity& u);

// pointwise linear algebra used throughout the solver
void axpy(SpectralVelocity& y, Complex a, const SpectralVelocity& x);  // y += a*x
SpectralVelocity subtract(const SpectralVelocity& a, const SpectralVelocity& b);
void scale(SpectralVelocity& u, double a);

}  // namespace nscrit
