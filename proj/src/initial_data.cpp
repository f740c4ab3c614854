#include "nscrit/initial_data.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "nscrit/geometry.hpp"
#include "nscrit/norms.hpp"
#include "nscrit/operators.hpp"
#include "nscrit/snapshot.hpp"
#include "nscrit/test_function.hpp"
#include "nscrit/transform.hpp"

namespace nscrit {

DataFamily data_family_from_name(const std::string& name) {
    if (name == "taylor_green") return DataFamily::taylor_green;
    if (name == "beltrami") return DataFamily::beltrami;
    if (name == "random_divfree") return DataFamily::random_divfree;
    if (name == "localized_bump") return DataFamily::localized_bump;
    if (name == "from_file") return DataFamily::from_file;
    throw std::invalid_argument("unknown data family '" + name + "'");
}

const char* data_family_name(DataFamily f) {
    switch (f) {
        case DataFamily::taylor_green: return "taylor_green";
        case DataFamily::beltrami: return "beltrami";
        case DataFamily::random_divfree: return "random_divfree";
        case DataFamily::localized_bump: return "localized_bump";
        case DataFamily::from_file: return "from_file";
    }
    return "unknown";
}

namespace {

SpectralVelocity from_lattice(const Grid& g,
                              const std::function<std::array<double, 3>(double, double,
                                                                        double)>& f) {
    PhysicalField phys(g, 3);
    int n = g.n;
    double h = g.dx();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                auto v = f(a * h, b * h, c * h);
                std::size_t idx = g.index(a, b, c);
                for (int d = 0; d < 3; ++d) phys.values[d * g.num_modes() + idx] = v[d];
            }
    return to_spectral_velocity(phys);
}

SpectralVelocity taylor_green(const Grid& g, double amp) {
    double k0 = kTwoPi / g.box_length;
    return from_lattice(g, [=](double x, double y, double z) {
        return std::array<double, 3>{
            amp * std::cos(k0 * x) * std::sin(k0 * y) * std::sin(k0 * z),
            -amp * std::sin(k0 * x) * std::cos(k0 * y) * std::sin(k0 * z),
            0.0};
    });
}

SpectralVelocity beltrami(const Grid& g, double amp) {
    double k0 = kTwoPi / g.box_length;
    return from_lattice(g, [=](double x, double y, double z) {
        return std::array<double, 3>{amp * (std::sin(k0 * z) + std::cos(k0 * y)),
                                     amp * (std::sin(k0 * x) + std::cos(k0 * z)),
                                     amp * (std::sin(k0 * y) + std::cos(k0 * x))};
    });
}

// Gaussian coefficients with a |k|^slope envelope, drawn in a fixed row-major
// order over canonical mode representatives so a seed fully determines the
// field on a given grid.
SpectralVelocity random_divfree(const Grid& g, const InitialDataSpec& spec) {
    SpectralVelocity u(g);
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (!g.retained(a, b, c)) continue;
                std::size_t idx = g.index(a, b, c);
                std::size_t cj = g.conj_index(a, b, c);
                if (cj < idx) continue;  // mirror of an earlier draw
                auto k = g.wavevector(a, b, c);
                double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 == 0.0) continue;
                Complex z[3];
                if (cj == idx) {
                    for (int d = 0; d < 3; ++d) z[d] = Complex(gauss(rng), 0.0);
                } else {
                    for (int d = 0; d < 3; ++d) {
                        double re = gauss(rng);
                        double im = gauss(rng);
                        z[d] = Complex(re, im);
                    }
                }
                double env = std::pow(std::sqrt(k2), spec.spectrum_slope);
                for (int d = 0; d < 3; ++d) u.coeffs[d][idx] = env * z[d];
                if (cj != idx)
                    for (int d = 0; d < 3; ++d) u.coeffs[d][cj] = std::conj(u.coeffs[d][idx]);
            }
    u = leray_project(u);
    hermitian_symmetrize(u);
    return u;
}

SpectralVelocity localized_bump(const Grid& g, const InitialDataSpec& spec) {
    if (!(spec.bump_radius > 0.0) || spec.bump_radius >= 0.5 * g.box_length)
        throw std::invalid_argument(
            "localized_bump: bump_radius must lie in (0, box_length/2)");
    double half = 0.5 * g.box_length;
    SpaceBump psi{{half, half, half}, spec.bump_radius, 1.0};
    // stream function psi e_z, so u = (d_y psi, -d_x psi, 0): divergence free
    // and compactly supported
    return from_lattice(g, [&](double x, double y, double z) {
        auto grd = psi.grad({x, y, z}, g.box_length);
        return std::array<double, 3>{grd[1], -grd[0], 0.0};
    });
}

}  // namespace

SpectralVelocity make_initial_data(const Grid& grid, const InitialDataSpec& spec) {
    SpectralVelocity u(grid);
    bool normalize = false;
    switch (spec.family) {
        case DataFamily::taylor_green:
            u = taylor_green(grid, spec.amplitude);
            break;
        case DataFamily::beltrami:
            u = beltrami(grid, spec.amplitude);
            break;
        case DataFamily::random_divfree:
            u = random_divfree(grid, spec);
            normalize = true;
            break;
        case DataFamily::localized_bump:
            u = localized_bump(grid, spec);
            normalize = true;
            break;
        case DataFamily::from_file: {
            LoadedSnapshot snap = read_snapshot(spec.path, grid.dealias_fraction);
            if (snap.grid.n != grid.n)
                throw std::invalid_argument("from_file: snapshot resolution " +
                                            std::to_string(snap.grid.n) +
                                            " does not match requested grid " +
                                            std::to_string(grid.n));
            if (std::abs(snap.grid.box_length - grid.box_length) >
                1e-12 * grid.box_length)
                throw std::invalid_argument("from_file: snapshot box length mismatch");
            u = snap.as_velocity();
            u.grid = grid;
            break;
        }
    }
    apply_dealias(u);
    u = leray_project(u);
    hermitian_symmetrize(u);
    remove_mean(u);
    if (normalize) {
        double h = hs_norm(u, 0.5);
        if (h <= 0.0)
            throw std::runtime_error("initial data degenerated to zero, cannot normalize");
        scale(u, spec.amplitude / h);
    }
    if (spec.offset[0] != 0.0 || spec.offset[1] != 0.0 || spec.offset[2] != 0.0)
        u = translate_data(u, spec.offset);
    return u;
}

SpectralVelocity translate_data(const SpectralVelocity& u,
                                const std::array<double, 3>& shift) {
    const Grid& g = u.grid;
    SpectralVelocity out(g);
    int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t idx = g.index(a, b, c);
                auto k = g.wavevector(a, b, c);
                double phase = -(k[0] * shift[0] + k[1] * shift[1] + k[2] * shift[2]);
                Complex rot(std::cos(phase), std::sin(phase));
                for (int d = 0; d < 3; ++d) out.coeffs[d][idx] = rot * u.coeffs[d][idx];
            }
    hermitian_symmetrize(out);
    return out;
}

SpectralVelocity rescale_data(const SpectralVelocity& u, int lambda,
                              const Grid& dest_grid) {
    if (lambda < 1) throw std::invalid_argument("rescale_data: lambda must be >= 1");
    const Grid& gs = u.grid;
    if (std::abs(gs.box_length - dest_grid.box_length) > 1e-12 * gs.box_length)
        throw std::invalid_argument("rescale_data: source and destination boxes differ");
    SpectralVelocity out(dest_grid);
    int n = gs.n;
    int cap = dest_grid.max_retained_mode();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t idx = gs.index(a, b, c);
                double mag = std::abs(u.coeffs[0][idx]) + std::abs(u.coeffs[1][idx]) +
                             std::abs(u.coeffs[2][idx]);
                if (mag == 0.0) continue;
                int ma = lambda * gs.alias(a);
                int mb = lambda * gs.alias(b);
                int mc = lambda * gs.alias(c);
                if (std::abs(ma) > cap || std::abs(mb) > cap || std::abs(mc) > cap)
                    throw std::invalid_argument(
                        "rescale_data: mode lands outside the destination's retained "
                        "band");
                auto wrap = [&](int m) { return m >= 0 ? m : m + dest_grid.n; };
                std::size_t di = dest_grid.index(wrap(ma), wrap(mb), wrap(mc));
                for (int d = 0; d < 3; ++d)
                    out.coeffs[d][di] = double(lambda) * u.coeffs[d][idx];
            }
    hermitian_symmetrize(out);
    return out;
}

SpectralVelocity similarity_rescale(const SpectralVelocity& u, double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("similarity_rescale: lambda must be positive");
    Grid g2(u.grid.n, u.grid.box_length / lambda, u.grid.dealias_fraction);
    SpectralVelocity out(g2);
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < u.coeffs[d].size(); ++i)
            out.coeffs[d][i] = lambda * u.coeffs[d][i];
    return out;
}

}  // namespace nscrit
