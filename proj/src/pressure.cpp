#include "nscrit/pressure.hpp"

#include <cmath>
#include <stdexcept>

#include "nscrit/geometry.hpp"
#include "nscrit/nonlinear.hpp"
#include "nscrit/operators.hpp"
#include "nscrit/transform.hpp"

namespace nscrit {

namespace {

// spectrum of one real product field, amplitude normalization
ScalarSpectralField scalar_spectrum(const Grid& g, const std::vector<double>& samples) {
    PhysicalField phys(g, 1);
    phys.values = samples;
    return to_spectral_scalar(phys);
}

}  // namespace

ScalarSpectralField pressure_from_velocity(const SpectralVelocity& u) {
    const Grid& g = u.grid;
    auto products = symmetric_products_physical(u);
    ScalarSpectralField p(g);
    int n = g.n;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            ScalarSpectralField qij = scalar_spectrum(g, products[sym_index(i, j)]);
            double factor = (i == j) ? 1.0 : 2.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) {
                        if (a == 0 && b == 0 && c == 0) continue;
                        std::size_t idx = g.index(a, b, c);
                        auto k = g.wavevector(a, b, c);
                        double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                        p.coeffs[idx] -= factor * k[i] * k[j] / k2 * qij.coeffs[idx];
                    }
        }
    apply_dealias(p);
    hermitian_symmetrize(g, p.coeffs);
    p.coeffs[0] = Complex(0.0);
    return p;
}

WindowedPressure windowed_pressure_split(const SpectralVelocity& u, const Ball& ball,
                                         double mollify_cells) {
    const Grid& g = u.grid;
    if (!(ball.radius > 0.0) || ball.radius >= 0.25 * g.box_length)
        throw std::invalid_argument(
            "windowed_pressure_split: ball radius must lie in (0, box_length/4)");
    if (mollify_cells < 1.0)
        throw std::invalid_argument("windowed_pressure_split: mollify_cells must be >= 1");
    double width = mollify_cells * g.dx();
    if (width >= ball.radius)
        throw std::invalid_argument(
            "windowed_pressure_split: mollification band wider than the ball");

    // chi = 1 for dist <= radius - width, 0 for dist >= radius
    std::size_t m = g.num_modes();
    std::vector<double> chi(m);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int c = 0; c < g.n; ++c) {
                double d = periodic_dist(g, a, b, c, ball.center);
                chi[g.index(a, b, c)] = smoothstep((ball.radius - d) / width);
            }

    auto products = symmetric_products_physical(u);
    WindowedPressure out;
    out.ball = ball;
    out.mollify_width = width;
    out.p = pressure_from_velocity(u);
    out.p_tilde = ScalarSpectralField(g);

    std::vector<double> windowed(m);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const auto& q = products[sym_index(i, j)];
            for (std::size_t x = 0; x < m; ++x) windowed[x] = chi[x] * q[x];
            ScalarSpectralField qc = scalar_spectrum(g, windowed);
            ScalarSpectralField term = riesz_multiply(i, j, qc);
            double factor = (i == j) ? 1.0 : 2.0;
            for (std::size_t x = 0; x < m; ++x)
                out.p_tilde.coeffs[x] += factor * term.coeffs[x];
        }
    hermitian_symmetrize(g, out.p_tilde.coeffs);
    out.p_tilde.coeffs[0] = Complex(0.0);

    out.h = ScalarSpectralField(g);
    for (std::size_t x = 0; x < m; ++x)
        out.h.coeffs[x] = out.p.coeffs[x] - out.p_tilde.coeffs[x];
    return out;
}

double harmonic_oscillation_ratio(const ScalarSpectralField& h,
                                  const std::array<double, 3>& center,
                                  double r_small, double r_big, double gamma) {
    const Grid& g = h.grid;
    if (!(r_small > 0.0) || r_small > 0.5 * r_big)
        throw std::invalid_argument(
            "harmonic_oscillation_ratio: need 0 < r_small <= r_big/2");
    if (r_big >= 0.25 * g.box_length)
        throw std::invalid_argument(
            "harmonic_oscillation_ratio: r_big must be below box_length/4");
    if (!(gamma > 0.0))
        throw std::invalid_argument("harmonic_oscillation_ratio: gamma must be positive");

    PhysicalField phys = to_physical(h);
    auto small = ball_indices(g, center, r_small);
    auto big = ball_indices(g, center, r_big);
    if (small.size() < 8 || big.size() < 8)
        throw std::invalid_argument(
            "harmonic_oscillation_ratio: ball resolves too few lattice points");

    double mean_small = 0.0;
    for (std::size_t i : small) mean_small += phys.at(0, i);
    mean_small /= double(small.size());

    double osc = 0.0;
    for (std::size_t i : small)
        osc += std::pow(std::abs(phys.at(0, i) - mean_small), gamma);
    osc /= double(small.size());

    double bulk = 0.0;
    for (std::size_t i : big) bulk += std::pow(std::abs(phys.at(0, i)), gamma);
    bulk /= double(big.size());

    double denom = std::pow(r_small / r_big, gamma) * bulk;
    if (denom == 0.0)
        throw std::invalid_argument("harmonic_oscillation_ratio: zero field in big ball");
    return osc / denom;
}

}  // namespace nscrit
