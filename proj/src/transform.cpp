#include "nscrit/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace nscrit {

namespace {

struct PlanSet {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// Plans are created once per grid size under a lock and then reused via
// fftw_execute_dft, which is thread safe.  FFTW_UNALIGNED lets the plan run
// on any caller buffer; FFTW_ESTIMATE keeps planning deterministic.
PlanSet& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, PlanSet> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::size_t count = std::size_t(n) * n * n;
    SpectralArray a(count), b(count);
    PlanSet p;
    p.forward = fftw_plan_dft_3d(
        n, n, n, reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_3d(
        n, n, n, reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.forward || !p.backward)
        throw std::runtime_error("transform: fftw plan creation failed");
    return cache.emplace(n, p).first->second;
}

}  // namespace

void fft_forward(const Grid& grid, const Complex* in, Complex* out) {
    if (in == out)
        throw std::invalid_argument("fft_forward: in-place call not supported");
    fftw_execute_dft(plans_for(grid.n).forward,
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void fft_backward(const Grid& grid, const Complex* in, Complex* out) {
    if (in == out)
        throw std::invalid_argument("fft_backward: in-place call not supported");
    fftw_execute_dft(plans_for(grid.n).backward,
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

PhysicalField to_physical(const SpectralVelocity& u) {
    PhysicalField out(u.grid, 3);
    std::size_t m = u.grid.num_modes();
    SpectralArray buf(m);
    for (int c = 0; c < 3; ++c) {
        fft_backward(u.grid, u.coeffs[c].data(), buf.data());
        for (std::size_t i = 0; i < m; ++i) out.at(c, i) = buf[i].real();
    }
    return out;
}

PhysicalField to_physical(const ScalarSpectralField& f) {
    PhysicalField out(f.grid, 1);
    std::size_t m = f.grid.num_modes();
    SpectralArray buf(m);
    fft_backward(f.grid, f.coeffs.data(), buf.data());
    for (std::size_t i = 0; i < m; ++i) out.at(0, i) = buf[i].real();
    return out;
}

SpectralVelocity to_spectral_velocity(const PhysicalField& f) {
    if (f.components != 3)
        throw std::invalid_argument("to_spectral_velocity: need 3 components");
    if (f.values.size() != 3 * f.grid.num_modes())
        throw std::invalid_argument("to_spectral_velocity: sample count mismatch");
    SpectralVelocity out(f.grid);
    std::size_t m = f.grid.num_modes();
    double inv = 1.0 / double(m);
    SpectralArray buf(m);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < m; ++i) buf[i] = Complex(f.at(c, i), 0.0);
        fft_forward(f.grid, buf.data(), out.coeffs[c].data());
        for (Complex& z : out.coeffs[c]) z *= inv;
        hermitian_symmetrize(f.grid, out.coeffs[c]);
    }
    return out;
}

ScalarSpectralField to_spectral_scalar(const PhysicalField& f) {
    if (f.components != 1)
        throw std::invalid_argument("to_spectral_scalar: need 1 component");
    if (f.values.size() != f.grid.num_modes())
        throw std::invalid_argument("to_spectral_scalar: sample count mismatch");
    ScalarSpectralField out(f.grid);
    std::size_t m = f.grid.num_modes();
    double inv = 1.0 / double(m);
    SpectralArray buf(m);
    for (std::size_t i = 0; i < m; ++i) buf[i] = Complex(f.at(0, i), 0.0);
    fft_forward(f.grid, buf.data(), out.coeffs.data());
    for (Complex& z : out.coeffs) z *= inv;
    hermitian_symmetrize(f.grid, out.coeffs);
    return out;
}

}  // namespace nscrit
