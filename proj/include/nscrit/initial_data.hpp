#pragma once

// Built-in divergence-free initial data families plus the rescaling and
// translation maps used by the scaling experiments.
//
// Amplitude semantics differ by family and are part of the contract:
//   taylor_green, beltrami  amplitude is the coefficient A in the closed-form
//                           formulas below (so energy has a closed form too)
//   random_divfree,
//   localized_bump          the field is normalized so that its sobolev norm
//                           of order 1/2 equals `amplitude`
//   from_file               amplitude is ignored; coefficients come from disk
//
// Closed forms on a box of length L with k0 = 2*pi/L:
//   taylor_green: u = A (cos(k0 x) sin(k0 y) sin(k0 z),
//                       -sin(k0 x) cos(k0 y) sin(k0 z), 0)
//                 ||u||_{L2}^2 = A^2 L^3 / 4
//   beltrami:     u = A (sin(k0 z) + cos(k0 y),
//                        sin(k0 x) + cos(k0 z),
//                        sin(k0 y) + cos(k0 x))
//                 curl u = k0 u,  ||u||_{L2}^2 = 3 A^2 L^3
//                 (an eigenfunction of curl; its nonlinear term is a pure
//                 gradient, so the projected equation decays exactly like
//                 exp(-k0^2 t) times the data)

#include <array>
#include <string>

#include "nscrit/field.hpp"

namespace nscrit {

enum class DataFamily {
    taylor_green,
    beltrami,
    random_divfree,
    localized_bump,
    from_file,
};

DataFamily data_family_from_name(const std::string& name);
const char* data_family_name(DataFamily f);

struct InitialDataSpec {
    DataFamily family = DataFamily::taylor_green;
    double amplitude = 1.0;
    unsigned long long seed = 0;     // random_divfree
    double spectrum_slope = -2.0;    // random_divfree: |k|^slope envelope
    double bump_radius = 1.0;        // localized_bump half-width
    std::array<double, 3> offset{0.0, 0.0, 0.0};  // translation applied last
    std::string path;                // from_file
};

// Synthesize data on the given grid. Always divergence free, dealiased,
// mean free, conjugate symmetric.
SpectralVelocity make_initial_data(const Grid& grid, const InitialDataSpec& spec);

// u(x) -> u(x - shift), i.e. multiply mode k by exp(-i k . shift).
SpectralVelocity translate_data(const SpectralVelocity& u,
                                const std::array<double, 3>& shift);

// Fixed-box zoom u_lambda(x) = lambda u(lambda x) for integer lambda >= 1.
// Mode m of u lands on mode lambda*m of the destination grid with its
// coefficient multiplied by lambda. Throws if any retained source mode would
// land outside the destination's retained band. Sobolev norms transform as
//   ||u_lambda||_{H^s} = lambda^{s+1} ||u||_{H^s}
// on the fixed box (the volume factor does not shrink), so no fixed-box zoom
// is norm invariant; invariance at s = 1/2 needs the box-carrying map below.
SpectralVelocity rescale_data(const SpectralVelocity& u, int lambda,
                              const Grid& dest_grid);

// Box-carrying similarity map u_lambda(x) = lambda u(lambda x) viewed on the
// shrunken box [0, L/lambda)^3. Coefficient index layout is unchanged; every
// coefficient picks up a factor lambda and the grid records the new box.
// The sobolev norm of order 1/2 is exactly invariant under this map.
SpectralVelocity similarity_rescale(const SpectralVelocity& u, double lambda);

}  // namespace nscrit
