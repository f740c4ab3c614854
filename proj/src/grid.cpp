#include "nscrit/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nscrit {

Grid::Grid(int n_modes, double length, double dealias)
    : n(n_modes), box_length(length), dealias_fraction(dealias) {
    if (n < 4 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid: n must be a power of two >= 4, got " +
                                    std::to_string(n));
    if (!(box_length > 0.0))
        throw std::invalid_argument("grid: box_length must be positive");
    if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
        throw std::invalid_argument("grid: dealias_fraction must lie in (0, 1]");
}

int Grid::max_retained_mode() const {
    // strict mask: |m~| > fraction*n/2 dies, so the survivors reach
    // floor(fraction*n/2) with a tiny slack for exact fractions like 2/3
    int cap = int(std::floor(dealias_fraction * n / 2.0 + 1e-9));
    return std::min(cap, n / 2 - 1);  // Nyquist is always masked
}

bool Grid::retained(int a, int b, int c) const {
    int cap = max_retained_mode();
    return std::abs(alias(a)) <= cap && std::abs(alias(b)) <= cap &&
           std::abs(alias(c)) <= cap;
}

}  // namespace nscrit
