#include "nscrit/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace nscrit {

SpectralVelocity leray_project(const SpectralVelocity& u) {
    const Grid& g = u.grid;
    SpectralVelocity out(g);
    int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t i = g.index(a, b, c);
                if (a == 0 && b == 0 && c == 0) continue;
                auto k = g.wavevector(a, b, c);
                double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                Complex dot =
                    k[0] * u.coeffs[0][i] + k[1] * u.coeffs[1][i] + k[2] * u.coeffs[2][i];
                for (int d = 0; d < 3; ++d)
                    out.coeffs[d][i] = u.coeffs[d][i] - k[d] * dot / k2;
            }
    return out;
}

ScalarSpectralField riesz_multiply(int i, int j, const ScalarSpectralField& f) {
    if (i < 0 || i > 2 || j < 0 || j > 2)
        throw std::invalid_argument("riesz_multiply: component out of range");
    const Grid& g = f.grid;
    ScalarSpectralField out(g);
    int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                std::size_t idx = g.index(a, b, c);
                auto k = g.wavevector(a, b, c);
                double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                out.coeffs[idx] = -k[i] * k[j] / k2 * f.coeffs[idx];
            }
    return out;
}

SpectralVelocity gradient(const ScalarSpectralField& f) {
    const Grid& g = f.grid;
    SpectralVelocity out(g);
    int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t idx = g.index(a, b, c);
                auto k = g.wavevector(a, b, c);
                Complex cf = Complex(0.0, 1.0) * f.coeffs[idx];
                for (int d = 0; d < 3; ++d) out.coeffs[d][idx] = k[d] * cf;
            }
    return out;
}

ScalarSpectralField divergence(const SpectralVelocity& u) {
    const Grid& g = u.grid;
    ScalarSpectralField out(g);
    int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t idx = g.index(a, b, c);
                auto k = g.wavevector(a, b, c);
                Complex dot = k[0] * u.coeffs[0][idx] + k[1] * u.coeffs[1][idx] +
                              k[2] * u.coeffs[2][idx];
                out.coeffs[idx] = Complex(0.0, 1.0) * dot;
            }
    return out;
}

namespace {
// |k|^{2s} with the zero mode pinned at zero (safe for negative s)
inline double power_multiplier(double k2, double s) {
    return k2 > 0.0 ? std::pow(k2, s) : 0.0;
}
}  // namespace

ScalarSpectralField laplacian_power(const ScalarSpectralField& f, double s) {
    const Grid& g = f.grid;
    ScalarSpectralField out(g);
    int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t idx = g.index(a, b, c);
                out.coeffs[idx] = power_multiplier(g.k_squared(a, b, c), s) * f.coeffs[idx];
            }
    return out;
}

SpectralVelocity laplacian_power(const SpectralVelocity& u, double s) {
    const Grid& g = u.grid;
    SpectralVelocity out(g);
    int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t idx = g.index(a, b, c);
                double m = power_multiplier(g.k_squared(a, b, c), s);
                for (int d = 0; d < 3; ++d) out.coeffs[d][idx] = m * u.coeffs[d][idx];
            }
    return out;
}

void heat_multiply_inplace(SpectralVelocity& u, double t) {
    if (t < 0.0)
        throw std::invalid_argument("heat_multiply: negative time");
    const Grid& g = u.grid;
    int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t idx = g.index(a, b, c);
                double m = std::exp(-g.k_squared(a, b, c) * t);
                for (int d = 0; d < 3; ++d) u.coeffs[d][idx] *= m;
            }
}

}  // namespace nscrit
