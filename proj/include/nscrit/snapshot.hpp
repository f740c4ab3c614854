#pragma once

#include <string>

#include "nscrit/field.hpp"

namespace nscrit {

// Binary spectral snapshot, little-endian:
//   bytes 0..3   magic "NSSF"
//   bytes 4..7   u32 format version (currently 1)
//   bytes 8..11  u32 modes per axis
//   bytes 12..15 u32 component count (1 or 3)
//   bytes 16..23 f64 box length
//   bytes 24..31 f64 snapshot time
//   bytes 32..   components * n^3 complex doubles, row-major per component
// Readers validate the magic, version, size and conjugate symmetry, and
// errors name the byte offset at which the file went wrong.

struct LoadedSnapshot {
    double time = 0.0;
    int components = 0;
    Grid grid;  // dealias fraction comes from the caller, not the file
    std::array<SpectralArray, 3> coeffs;

    SpectralVelocity as_velocity() const;
    ScalarSpectralField as_scalar() const;
};

void write_snapshot(const std::string& path, const SpectralVelocity& u, double time);
void write_snapshot(const std::string& path, const ScalarSpectralField& f, double time);

LoadedSnapshot read_snapshot(const std::string& path,
                             double dealias_fraction = 2.0 / 3.0);

}  // namespace nscrit
