#include "nscrit/calderon.hpp"

#include <cmath>
#include <stdexcept>

#include "nscrit/geometry.hpp"
#include "nscrit/norms.hpp"

namespace nscrit {

namespace {

SpectralVelocity high_pass(const SpectralVelocity& u, double r) {
    const Grid& g = u.grid;
    SpectralVelocity out(g);
    int n = g.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::size_t idx = g.index(a, b, c);
                double kk = std::sqrt(g.k_squared(a, b, c));
                double w;
                if (kk <= 0.5 * r)
                    w = 0.0;
                else if (kk >= r)
                    w = 1.0;
                else
                    w = smoothstep((kk - 0.5 * r) / (0.5 * r));
                for (int d = 0; d < 3; ++d) out.coeffs[d][idx] = w * u.coeffs[d][idx];
            }
    return out;
}

}  // namespace

CalderonSplit calderon_split(const SpectralVelocity& u0, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("calderon_split: eta must be positive");
    const Grid& g = u0.grid;
    CalderonSplit s{SpectralVelocity(g), SpectralVelocity(g), 0.0, 0.0, 0.0, true, 0.0};

    double total = hs_norm(u0, 0.5);
    if (total <= eta) {
        // nothing to peel off: the whole field already fits the budget
        s.a0 = u0;
        s.v0 = SpectralVelocity(g);
        s.cutoff_radius = 0.0;
        s.a0_hhalf = total;
        s.v0_l2 = 0.0;
        return s;
    }

    double k_unit = kTwoPi / g.box_length;
    double k_max = k_unit * g.max_retained_mode() * std::sqrt(3.0);
    double lo = 0.5 * k_unit;           // norm still above eta here
    double hi = 2.0 * (k_max + k_unit); // transition clears every mode: norm 0
    s.achievable_min = hs_norm(high_pass(u0, hi), 0.5);
    if (hs_norm(high_pass(u0, lo), 0.5) <= eta) {
        hi = lo;  // already small at the narrowest cutoff we probe
    } else {
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (hs_norm(high_pass(u0, mid), 0.5) <= eta)
                hi = mid;
            else
                lo = mid;
        }
    }
    s.cutoff_radius = hi;
    s.a0 = high_pass(u0, hi);
    s.v0 = subtract(u0, s.a0);
    s.a0_hhalf = hs_norm(s.a0, 0.5);
    s.v0_l2 = hs_norm(s.v0, 0.0);
    s.eta_reached = s.a0_hhalf <= eta * (1.0 + 1e-12);
    return s;
}

}  // namespace nscrit
