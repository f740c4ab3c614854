#include "nscrit/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nscrit {

namespace {

double hs_norm_sq(const Grid& g, const SpectralArray* comps, int ncomp, double s) {
    int n = g.n;
    double sum = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                std::size_t idx = g.index(a, b, c);
                double mag2 = 0.0;
                for (int d = 0; d < ncomp; ++d) mag2 += std::norm(comps[d][idx]);
                if (mag2 == 0.0) continue;
                double k2 = g.k_squared(a, b, c);
                sum += std::pow(k2, s) * mag2;
            }
    double vol = g.box_length * g.box_length * g.box_length;
    return vol * sum;
}

}  // namespace

double hs_norm(const ScalarSpectralField& f, double s) {
    return std::sqrt(hs_norm_sq(f.grid, &f.coeffs, 1, s));
}

double hs_norm(const SpectralVelocity& u, double s) {
    return std::sqrt(hs_norm_sq(u.grid, u.coeffs.data(), 3, s));
}

double lp_norm(const PhysicalField& f, double p) {
    if (p < 1.0)
        throw std::invalid_argument("lp_norm: p must be >= 1");
    std::size_t m = f.grid.num_modes();
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        sum += std::pow(f.magnitude(i), p);
    return std::pow(f.grid.cell_volume() * sum, 1.0 / p);
}

double linf_norm(const PhysicalField& f) {
    std::size_t m = f.grid.num_modes();
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        worst = std::max(worst, f.magnitude(i));
    return worst;
}

double tail_fraction(const SpectralVelocity& u) {
    const Grid& g = u.grid;
    int n = g.n;
    int cap = g.max_retained_mode();
    int edge = (2 * cap) / 3;  // strictly above this counts as tail
    double total = 0.0, tail = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (!g.retained(a, b, c)) continue;
                std::size_t idx = g.index(a, b, c);
                double mag2 = std::norm(u.coeffs[0][idx]) +
                              std::norm(u.coeffs[1][idx]) +
                              std::norm(u.coeffs[2][idx]);
                total += mag2;
                int shell = std::max({std::abs(g.alias(a)), std::abs(g.alias(b)),
                                      std::abs(g.alias(c))});
                if (shell > edge) tail += mag2;
            }
    return total > 0.0 ? tail / total : 0.0;
}

}  // namespace nscrit
