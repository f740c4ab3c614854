#include "nscrit/test_function.hpp"

#include <cmath>

#include "nscrit/geometry.hpp"

namespace nscrit {

namespace {

inline double b(double s) {
    double q = 1.0 - s * s;
    return q > 0.0 ? q * q * q : 0.0;
}

inline double bp(double s) {
    double q = 1.0 - s * s;
    return q > 0.0 ? -6.0 * s * q * q : 0.0;
}

inline double bpp(double s) {
    double q = 1.0 - s * s;
    return q > 0.0 ? q * (30.0 * s * s - 6.0) : 0.0;
}

}  // namespace

double SpaceBump::value(const std::array<double, 3>& x, double box_length) const {
    double v = amplitude;
    for (int d = 0; d < 3; ++d)
        v *= b(min_image(x[d] - center[d], box_length) / radius);
    return v;
}

std::array<double, 3> SpaceBump::grad(const std::array<double, 3>& x,
                                      double box_length) const {
    std::array<double, 3> s;
    for (int d = 0; d < 3; ++d)
        s[d] = min_image(x[d] - center[d], box_length) / radius;
    std::array<double, 3> g;
    for (int d = 0; d < 3; ++d) {
        double v = amplitude * bp(s[d]) / radius;
        for (int e = 0; e < 3; ++e)
            if (e != d) v *= b(s[e]);
        g[d] = v;
    }
    return g;
}

double SpaceBump::laplacian(const std::array<double, 3>& x, double box_length) const {
    std::array<double, 3> s;
    for (int d = 0; d < 3; ++d)
        s[d] = min_image(x[d] - center[d], box_length) / radius;
    double lap = 0.0;
    for (int d = 0; d < 3; ++d) {
        double v = amplitude * bpp(s[d]) / (radius * radius);
        for (int e = 0; e < 3; ++e)
            if (e != d) v *= b(s[e]);
        lap += v;
    }
    return lap;
}

double TimeBump::value(double t) const { return b((t - center) / radius); }

double TimeBump::derivative(double t) const {
    return bp((t - center) / radius) / radius;
}

double TimeBump::half_decay(double t, double radius) {
    return t < 0.0 ? 1.0 : b(t / radius);
}

double TimeBump::half_decay_derivative(double t, double radius) {
    return t < 0.0 ? 0.0 : bp(t / radius) / radius;
}

}  // namespace nscrit
