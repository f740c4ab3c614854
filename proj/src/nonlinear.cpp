#include "nscrit/nonlinear.hpp"

#include <stdexcept>

#include "nscrit/operators.hpp"
#include "nscrit/transform.hpp"

namespace nscrit {

namespace {

// inverse transform of one dealiased component into real samples
std::vector<double> component_samples(const Grid& g, SpectralArray work) {
    apply_dealias(g, work);
    std::size_t m = g.num_modes();
    SpectralArray buf(m);
    fft_backward(g, work.data(), buf.data());
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = buf[i].real();
    return out;
}

// forward transform of a real product into amplitude-normalized coefficients
SpectralArray product_spectrum(const Grid& g, const std::vector<double>& p) {
    std::size_t m = g.num_modes();
    SpectralArray buf(m), out(m);
    for (std::size_t i = 0; i < m; ++i) buf[i] = Complex(p[i], 0.0);
    fft_forward(g, buf.data(), out.data());
    double inv = 1.0 / double(m);
    for (Complex& z : out) z *= inv;
    return out;
}

}  // namespace

SpectralVelocity nonlinear_term(const SpectralVelocity& u, const SpectralVelocity& v) {
    const Grid& g = u.grid;
    if (!(g == v.grid))
        throw std::invalid_argument("nonlinear_term: grid mismatch");
    std::size_t m = g.num_modes();
    int n = g.n;

    std::array<std::vector<double>, 3> up, vp;
    for (int c = 0; c < 3; ++c) up[c] = component_samples(g, u.coeffs[c]);
    bool same = &u == &v;
    if (!same)
        for (int c = 0; c < 3; ++c) vp[c] = component_samples(g, v.coeffs[c]);
    const auto& vv = same ? up : vp;

    SpectralVelocity out(g);
    std::vector<double> prod(m);
    for (int i = 0; i < 3; ++i) {
        int jstart = same ? i : 0;  // u_i v_j = u_j v_i when u == v
        for (int j = jstart; j < 3; ++j) {
            for (std::size_t x = 0; x < m; ++x) prod[x] = up[i][x] * vv[j][x];
            SpectralArray pij = product_spectrum(g, prod);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) {
                        std::size_t idx = g.index(a, b, c);
                        auto k = g.wavevector(a, b, c);
                        Complex ip = Complex(0.0, 1.0) * pij[idx];
                        out.coeffs[i][idx] += k[j] * ip;
                        if (same && j > i) out.coeffs[j][idx] += k[i] * ip;
                    }
        }
    }
    apply_dealias(out);
    for (int c = 0; c < 3; ++c) hermitian_symmetrize(g, out.coeffs[c]);
    remove_mean(out);
    return out;
}

SpectralVelocity convection_rhs(const SpectralVelocity& u) {
    SpectralVelocity w = leray_project(nonlinear_term(u, u));
    scale(w, -1.0);
    return w;
}

std::array<std::vector<double>, 6> symmetric_products_physical(const SpectralVelocity& u) {
    const Grid& g = u.grid;
    std::size_t m = g.num_modes();
    std::array<std::vector<double>, 3> up;
    for (int c = 0; c < 3; ++c) up[c] = component_samples(g, u.coeffs[c]);
    std::array<std::vector<double>, 6> out;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            auto& dst = out[sym_index(i, j)];
            dst.resize(m);
            for (std::size_t x = 0; x < m; ++x) dst[x] = up[i][x] * up[j][x];
        }
    return out;
}

}  // namespace nscrit
