#pragma once

#include <array>
#include <vector>

#include "nscrit/field.hpp"

namespace nscrit {

// Divergence-form convection term: component i of the result holds the
// coefficients of d_j (u_i v_j), i.e. i k_j (u_i v_j)^.  Inputs are dealiased
// before the collocation products and the output is dealiased after, so on
// the retained band the result equals the exact truncated convolution (2/3
// rule).  The result is NOT Leray projected.
SpectralVelocity nonlinear_term(const SpectralVelocity& u, const SpectralVelocity& v);

// -P div(u (x) u): the right-hand side of the mild formulation
SpectralVelocity convection_rhs(const SpectralVelocity& u);

// Dealiased symmetric collocation products u_i u_j on the lattice, packed as
// (0,0),(0,1),(0,2),(1,1),(1,2),(2,2).  Shared by the pressure solves.
std::array<std::vector<double>, 6> symmetric_products_physical(const SpectralVelocity& u);

inline int sym_index(int i, int j) {
    static constexpr int map[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return map[i][j];
}

}  // namespace nscrit
