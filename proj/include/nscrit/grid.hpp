#pragma once

#include <array>
#include <cstddef>

namespace nscrit {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Periodic box discretization: n modes per axis (power of two, n >= 4) on
// [0, box_length)^3.  Index m in [0,n) carries the signed alias
//   m~ = m        for 2m < n,
//   m~ = m - n    otherwise,
// and the wavenumber 2*pi*m~/box_length.  Spectral arrays are stored as the
// full logical spectrum in row-major index order (a*n + b)*n + c.
//
// The dealias mask zeroes every mode with any |m~| > dealias_fraction*n/2
// (2/3 by default) and always zeroes the Nyquist plane |m~| = n/2, which has
// no distinct conjugate partner and breaks odd-derivative antisymmetry.
struct Grid {
    int n = 0;
    double box_length = kTwoPi;
    double dealias_fraction = 2.0 / 3.0;

    Grid() = default;
    Grid(int n_modes, double length, double dealias = 2.0 / 3.0);

    std::size_t num_modes() const { return std::size_t(n) * n * n; }
    std::size_t index(int a, int b, int c) const {
        return (std::size_t(a) * n + b) * n + c;
    }
    // index of the conjugate partner -m (mod n per axis)
    std::size_t conj_index(int a, int b, int c) const {
        return index(a ? n - a : 0, b ? n - b : 0, c ? n - c : 0);
    }

    double dx() const { return box_length / n; }
    double cell_volume() const { return dx() * dx() * dx(); }

    int alias(int m) const { return 2 * m < n ? m : m - n; }
    double wavenumber(int m) const { return kTwoPi / box_length * alias(m); }
    std::array<double, 3> wavevector(int a, int b, int c) const {
        return {wavenumber(a), wavenumber(b), wavenumber(c)};
    }
    double k_squared(int a, int b, int c) const {
        auto k = wavevector(a, b, c);
        return k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    }

    // largest |m~| kept by the dealias mask
    int max_retained_mode() const;
    // true when the mode survives the dealias mask (Nyquist never does)
    bool retained(int a, int b, int c) const;

    bool operator==(const Grid& o) const {
        return n == o.n && box_length == o.box_length &&
               dealias_fraction == o.dealias_fraction;
    }
};

}  // namespace nscrit
