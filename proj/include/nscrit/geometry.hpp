#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "nscrit/grid.hpp"

namespace nscrit {

// signed displacement wrapped to the nearest periodic image, in [-L/2, L/2)
inline double min_image(double d, double box_length) {
    d = std::fmod(d, box_length);
    if (d < -0.5 * box_length) d += box_length;
    if (d >= 0.5 * box_length) d -= box_length;
    return d;
}

inline double periodic_dist(const Grid& g, int a, int b, int c,
                            const std::array<double, 3>& x0) {
    double dx0 = min_image(a * g.dx() - x0[0], g.box_length);
    double dx1 = min_image(b * g.dx() - x0[1], g.box_length);
    double dx2 = min_image(c * g.dx() - x0[2], g.box_length);
    return std::sqrt(dx0 * dx0 + dx1 * dx1 + dx2 * dx2);
}

// C^2 ramp: 0 for y <= 0, 1 for y >= 1, 6y^5 - 15y^4 + 10y^3 between
inline double smoothstep(double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    return ((6.0 * y - 15.0) * y + 10.0) * y * y * y;
}

// lattice indices strictly inside a periodic ball
inline std::vector<std::size_t> ball_indices(const Grid& g,
                                             const std::array<double, 3>& center,
                                             double radius) {
    std::vector<std::size_t> out;
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int c = 0; c < g.n; ++c)
                if (periodic_dist(g, a, b, c, center) < radius)
                    out.push_back(g.index(a, b, c));
    return out;
}

}  // namespace nscrit
