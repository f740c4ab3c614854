#include "nscrit/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nscrit {

double PhysicalField::magnitude(std::size_t idx) const {
    double s = 0.0;
    for (int c = 0; c < components; ++c) {
        double v = at(c, idx);
        s += v * v;
    }
    return std::sqrt(s);
}

void hermitian_symmetrize(const Grid& grid, SpectralArray& coeffs) {
    int n = grid.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t i = grid.index(a, b, c);
                std::size_t j = grid.conj_index(a, b, c);
                if (i < j) {
                    Complex h = 0.5 * (coeffs[i] + std::conj(coeffs[j]));
                    coeffs[i] = h;
                    coeffs[j] = std::conj(h);
                } else if (i == j) {
                    coeffs[i] = Complex(coeffs[i].real(), 0.0);
                }
            }
}

void hermitian_symmetrize(SpectralVelocity& u) {
    for (auto& comp : u.coeffs) hermitian_symmetrize(u.grid, comp);
}

double hermitian_defect(const Grid& grid, const SpectralArray& coeffs) {
    int n = grid.n;
    double worst = 0.0, scale = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t i = grid.index(a, b, c);
                std::size_t j = grid.conj_index(a, b, c);
                worst = std::max(worst, std::abs(coeffs[i] - std::conj(coeffs[j])));
                scale = std::max(scale, std::abs(coeffs[i]));
            }
    return scale > 0.0 ? worst / scale : 0.0;
}

double hermitian_defect(const SpectralVelocity& u) {
    double worst = 0.0;
    for (const auto& comp : u.coeffs)
        worst = std::max(worst, hermitian_defect(u.grid, comp));
    return worst;
}

void remove_mean(ScalarSpectralField& f) { f.coeffs[0] = Complex(0.0); }

void remove_mean(SpectralVelocity& u) {
    for (auto& comp : u.coeffs) comp[0] = Complex(0.0);
}

double divergence_defect(const SpectralVelocity& u) {
    const Grid& g = u.grid;
    int n = g.n;
    // modes far below the field's peak coefficient are roundoff dust left by
    // transform and projection arithmetic; their direction is meaningless, so
    // they must not dominate the per-mode relative ratio
    double peak = max_abs_coeff(u);
    double floor = 1e-13 * peak;
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                std::size_t i = g.index(a, b, c);
                auto k = g.wavevector(a, b, c);
                Complex dot = k[0] * u.coeffs[0][i] + k[1] * u.coeffs[1][i] +
                              k[2] * u.coeffs[2][i];
                double mag =
                    std::sqrt(std::norm(u.coeffs[0][i]) + std::norm(u.coeffs[1][i]) +
                              std::norm(u.coeffs[2][i]));
                double kmag = std::sqrt(g.k_squared(a, b, c));
                if (mag <= floor) continue;
                worst = std::max(worst, std::abs(dot) / (kmag * mag));
            }
    return worst;
}

void apply_dealias(const Grid& grid, SpectralArray& coeffs) {
    int n = grid.n;
    int cap = grid.max_retained_mode();
    for (int a = 0; a < n; ++a) {
        bool ka = std::abs(grid.alias(a)) > cap;
        for (int b = 0; b < n; ++b) {
            bool kb = ka || std::abs(grid.alias(b)) > cap;
            for (int c = 0; c < n; ++c)
                if (kb || std::abs(grid.alias(c)) > cap)
                    coeffs[grid.index(a, b, c)] = Complex(0.0);
        }
    }
}

void apply_dealias(SpectralVelocity& u) {
    for (auto& comp : u.coeffs) apply_dealias(u.grid, comp);
}

void apply_dealias(ScalarSpectralField& f) { apply_dealias(f.grid, f.coeffs); }

SpectralVelocity dealiased(const SpectralVelocity& u) {
    SpectralVelocity v = u;
    apply_dealias(v);
    return v;
}

double max_abs_coeff(const Grid&, const SpectralArray& coeffs) {
    double m = 0.0;
    for (const Complex& z : coeffs) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_coeff(const SpectralVelocity& u) {
    double m = 0.0;
    for (const auto& comp : u.coeffs)
        m = std::max(m, max_abs_coeff(u.grid, comp));
    return m;
}

bool has_nonfinite(const SpectralVelocity& u) {
    for (const auto& comp : u.coeffs)
        for (const Complex& z : comp)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return true;
    return false;
}

void axpy(SpectralVelocity& y, Complex a, const SpectralVelocity& x) {
    if (!(y.grid == x.grid))
        throw std::invalid_argument("axpy: grid mismatch");
    for (int c = 0; c < 3; ++c) {
        std::size_t m = y.coeffs[c].size();
        for (std::size_t i = 0; i < m; ++i) y.coeffs[c][i] += a * x.coeffs[c][i];
    }
}

SpectralVelocity subtract(const SpectralVelocity& a, const SpectralVelocity& b) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument("subtract: grid mismatch");
    SpectralVelocity d = a;
    for (int c = 0; c < 3; ++c) {
        std::size_t m = d.coeffs[c].size();
        for (std::size_t i = 0; i < m; ++i) d.coeffs[c][i] -= b.coeffs[c][i];
    }
    return d;
}

void scale(SpectralVelocity& u, double a) {
    for (auto& comp : u.coeffs)
        for (Complex& z : comp) z *= a;
}

}  // namespace nscrit
