#include "nscrit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "nscrit/geometry.hpp"
#include "nscrit/norms.hpp"
#include "nscrit/pressure.hpp"
#include "nscrit/transform.hpp"

namespace nscrit {

void DiagnosticsRecord::set_times(std::vector<double> t) {
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw std::invalid_argument("diagnostics record: times must increase");
    times = std::move(t);
}

void DiagnosticsRecord::add_series(const std::string& name, std::vector<double> values) {
    if (values.size() != times.size())
        throw std::invalid_argument("diagnostics record: series length mismatch");
    series[name] = std::move(values);
}

namespace {

// Simpson on uniform lattices (3/8 closeout for an odd interval count),
// trapezoid otherwise
double integrate_series(const std::vector<double>& t, const std::vector<double>& f) {
    std::size_t n = t.size();
    if (n != f.size() || n < 2)
        throw std::invalid_argument("integrate_series: need matching series, >= 2 points");
    double h = t[1] - t[0];
    bool uniform = true;
    for (std::size_t i = 1; i + 1 < n && uniform; ++i)
        if (std::abs((t[i + 1] - t[i]) - h) > 1e-9 * std::max(h, 1e-12)) uniform = false;
    std::size_t intervals = n - 1;
    if (!uniform || intervals == 1) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            acc += 0.5 * (f[i] + f[i + 1]) * (t[i + 1] - t[i]);
        return acc;
    }
    double acc = 0.0;
    std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
    for (std::size_t i = 0; i + 1 < simpson_end; i += 2)
        acc += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    if (intervals % 2 != 0) {
        if (intervals >= 3) {
            std::size_t i = intervals - 3;
            acc += 3.0 * h / 8.0 * (f[i] + 3.0 * f[i + 1] + 3.0 * f[i + 2] + f[i + 3]);
        }
    }
    return acc;
}

// snapshot indices covering [t_lo, t_hi]; gaps and end coverage must stay
// within max_gap
std::vector<std::size_t> select_window(const std::vector<double>& times, double t_lo,
                                       double t_hi, double max_gap,
                                       const char* what) {
    double slack = 1e-9 * std::max(1.0, std::abs(t_hi));
    if (t_lo < times.front() - slack || t_hi > times.back() + slack)
        throw std::invalid_argument(std::string(what) +
                                    ": time window outside the stored trajectory");
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] >= t_lo - slack && times[i] <= t_hi + slack) sel.push_back(i);
    if (sel.size() < 2)
        throw std::invalid_argument(std::string(what) +
                                    ": fewer than two snapshots in the time window");
    if (times[sel.front()] > t_lo + max_gap + slack ||
        times[sel.back()] < t_hi - max_gap - slack)
        throw std::invalid_argument(std::string(what) +
                                    ": snapshots do not cover the time window");
    for (std::size_t j = 1; j < sel.size(); ++j)
        if (times[sel[j]] - times[sel[j - 1]] > max_gap + slack)
            throw std::invalid_argument(std::string(what) +
                                        ": snapshot spacing too coarse for the window");
    return sel;
}

// squared Frobenius magnitude of the order-th derivative tensor, per lattice
// point (all derivative combinations, all components)
std::vector<double> grad_tensor_sq(const SpectralVelocity& u, int order) {
    const Grid& g = u.grid;
    std::size_t m = g.num_modes();
    int n = g.n;
    std::vector<double> acc(m, 0.0);
    int ncombo = 1;
    for (int i = 0; i < order; ++i) ncombo *= 3;
    const Complex ipow[4] = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    SpectralArray work(m), buf(m);
    for (int combo = 0; combo < ncombo; ++combo) {
        int digits[3] = {0, 0, 0};
        int rem = combo;
        for (int j = 0; j < order; ++j) {
            digits[j] = rem % 3;
            rem /= 3;
        }
        for (int comp = 0; comp < 3; ++comp) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) {
                        std::size_t idx = g.index(a, b, c);
                        auto k = g.wavevector(a, b, c);
                        double prod = 1.0;
                        for (int j = 0; j < order; ++j) prod *= k[digits[j]];
                        work[idx] = ipow[order % 4] * prod * u.coeffs[comp][idx];
                    }
            fft_backward(g, work.data(), buf.data());
            for (std::size_t i = 0; i < m; ++i) {
                double v = buf[i].real();
                acc[i] += v * v;
            }
        }
    }
    return acc;
}

// lazily computed per-snapshot physical fields shared across cylinders
struct SnapshotCache {
    const Trajectory& traj;
    std::map<std::size_t, PhysicalField> u_phys;
    std::map<std::size_t, PhysicalField> p_phys;
    std::map<std::size_t, std::vector<double>> gradsq;

    explicit SnapshotCache(const Trajectory& t) : traj(t) {}

    const PhysicalField& velocity(std::size_t i) {
        auto it = u_phys.find(i);
        if (it == u_phys.end())
            it = u_phys.emplace(i, to_physical(traj.snapshots[i])).first;
        return it->second;
    }
    const PhysicalField& pressure(std::size_t i) {
        auto it = p_phys.find(i);
        if (it == p_phys.end())
            it = p_phys.emplace(i, to_physical(pressure_from_velocity(traj.snapshots[i])))
                     .first;
        return it->second;
    }
    const std::vector<double>& grad_sq(std::size_t i) {
        auto it = gradsq.find(i);
        if (it == gradsq.end())
            it = gradsq.emplace(i, grad_tensor_sq(traj.snapshots[i], 1)).first;
        return it->second;
    }
};

double ckn_with_cache(SnapshotCache& cache, const ParabolicCylinder& cyl) {
    const Trajectory& traj = cache.traj;
    const Grid& g = traj.grid;
    if (!(cyl.radius > 0.0) || cyl.radius >= 0.5 * g.box_length)
        throw std::invalid_argument("ckn_quantity: radius must lie in (0, box_length/2)");
    double r2 = cyl.radius * cyl.radius;
    auto sel = select_window(traj.times, cyl.t_top - r2, cyl.t_top, r2 / 8.0,
                             "ckn_quantity");
    auto ball = ball_indices(g, cyl.center, cyl.radius);
    if (ball.size() < 8)
        throw std::invalid_argument("ckn_quantity: ball resolves too few lattice points");

    double cv = g.cell_volume();
    std::vector<double> tsel, fsel;
    for (std::size_t i : sel) {
        const PhysicalField& u = cache.velocity(i);
        const PhysicalField& p = cache.pressure(i);
        double pbar = 0.0;
        for (std::size_t x : ball) pbar += p.at(0, x);
        pbar /= double(ball.size());
        double s = 0.0;
        for (std::size_t x : ball) {
            double um = u.magnitude(x);
            s += um * um * um + std::pow(std::abs(p.at(0, x) - pbar), 1.5);
        }
        tsel.push_back(traj.times[i]);
        fsel.push_back(s * cv);
    }
    return integrate_series(tsel, fsel) / r2;
}

}  // namespace

double ckn_quantity(const Trajectory& traj, const ParabolicCylinder& cyl) {
    SnapshotCache cache(traj);
    return ckn_with_cache(cache, cyl);
}

PointClass classify_point(double ckn_value, double eps0) {
    if (!(eps0 > 0.0))
        throw std::invalid_argument("classify_point: eps0 must be positive");
    return ckn_value < eps0 ? PointClass::small_regular : PointClass::not_small;
}

namespace {

struct SpaceSums {
    double phi_usq = 0.0;      // int |u|^2 phi
    double lap_usq = 0.0;      // int |u|^2 lap(phi)
    double flux = 0.0;         // int (|u|^2 + 2p) u . grad(phi)
    double gradsq_phi = 0.0;   // int |grad u|^2 phi
};

// (1/L) int b(x/r) e^{-ikx} dx over the bump support, centered at 0.  The
// kernel is an even degree-6 polynomial, so dense composite Simpson nails it
// to roundoff for every wavenumber the padded lattice can carry.
double bump_axis_coeff(double radius, double k, double box_length) {
    constexpr int intervals = 8192;
    double h = radius / intervals;
    double acc = 0.0;
    for (int i = 0; i <= intervals; ++i) {
        double s = double(i) / intervals;
        double b = (1.0 - s * s);
        b = b * b * b;
        double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * b * std::cos(k * i * h);
    }
    return 2.0 * acc * h / (3.0 * box_length);
}

// The bump paired spectrally on a doubled lattice.  Quadratic and cubic
// products of dealiased snapshots are trig polynomials the doubled lattice
// represents without aliasing, and the bump side uses quadrature-exact
// coefficients, so the space integrals in the energy identities are exact;
// lattice point sums against the merely C^2 bump would floor the residual
// near 1e-2 instead.
struct BumpPairing {
    Grid pad;
    std::array<std::vector<Complex>, 3> axis;  // b_hat(k_m) e^{-i k_m c_d}

    BumpPairing(const Grid& g, const SpaceBump& phi)
        : pad(2 * g.n, g.box_length, g.dealias_fraction) {
        if (!(phi.radius > 0.0) || phi.radius >= 0.5 * g.box_length)
            throw std::invalid_argument(
                "space bump: radius must lie in (0, box_length/2)");
        std::vector<double> table(std::size_t(pad.n) / 2 + 1);
        for (std::size_t m = 0; m < table.size(); ++m)
            table[m] = bump_axis_coeff(phi.radius,
                                       kTwoPi / g.box_length * double(m),
                                       g.box_length);
        for (int d = 0; d < 3; ++d) {
            axis[d].resize(pad.n);
            for (int m = 0; m < pad.n; ++m) {
                double k = pad.wavenumber(m);
                double mag = table[std::size_t(std::abs(pad.alias(m)))];
                if (d == 0) mag *= phi.amplitude;
                axis[d][m] = mag * std::exp(Complex(0.0, -k * phi.center[d]));
            }
        }
    }

    Complex phi_hat(int a, int b, int c) const {
        return axis[0][a] * axis[1][b] * axis[2][c];
    }
};

// zero-pad a spectral array onto the doubled grid (dst must be zeroed)
void embed_padded(const Grid& g, const Grid& pad, const SpectralArray& src,
                  SpectralArray& dst) {
    for (int a = 0; a < g.n; ++a) {
        int pa = g.alias(a) >= 0 ? g.alias(a) : g.alias(a) + pad.n;
        for (int b = 0; b < g.n; ++b) {
            int pb = g.alias(b) >= 0 ? g.alias(b) : g.alias(b) + pad.n;
            for (int c = 0; c < g.n; ++c) {
                int pc = g.alias(c) >= 0 ? g.alias(c) : g.alias(c) + pad.n;
                dst[pad.index(pa, pb, pc)] = src[g.index(a, b, c)];
            }
        }
    }
}

// exact space integrals of one snapshot against the bump
SpaceSums exact_space_sums(const SpectralVelocity& u, const ScalarSpectralField& p,
                           const BumpPairing& bp) {
    const Grid& g = u.grid;
    const Grid& pad = bp.pad;
    std::size_t m = pad.num_modes();

    SpectralArray spec(m), buf(m);
    std::array<std::vector<double>, 3> uphys;
    for (int d = 0; d < 3; ++d) {
        std::fill(spec.begin(), spec.end(), Complex(0.0));
        embed_padded(g, pad, u.coeffs[d], spec);
        fft_backward(pad, spec.data(), buf.data());
        uphys[d].resize(m);
        for (std::size_t i = 0; i < m; ++i) uphys[d][i] = buf[i].real();
    }
    std::vector<double> pphys(m);
    std::fill(spec.begin(), spec.end(), Complex(0.0));
    embed_padded(g, pad, p.coeffs, spec);
    fft_backward(pad, spec.data(), buf.data());
    for (std::size_t i = 0; i < m; ++i) pphys[i] = buf[i].real();

    // |grad u|^2 from the nine padded derivative fields
    std::vector<double> gsq(m, 0.0);
    SpectralArray dspec(g.num_modes());
    for (int comp = 0; comp < 3; ++comp)
        for (int dir = 0; dir < 3; ++dir) {
            for (int a = 0; a < g.n; ++a)
                for (int b = 0; b < g.n; ++b)
                    for (int c = 0; c < g.n; ++c) {
                        std::size_t idx = g.index(a, b, c);
                        double k = g.wavevector(a, b, c)[dir];
                        dspec[idx] = Complex(0.0, k) * u.coeffs[comp][idx];
                    }
            std::fill(spec.begin(), spec.end(), Complex(0.0));
            embed_padded(g, pad, dspec, spec);
            fft_backward(pad, spec.data(), buf.data());
            for (std::size_t i = 0; i < m; ++i) {
                double v = buf[i].real();
                gsq[i] += v * v;
            }
        }

    // forward transforms of the product fields (divide by the padded count)
    double inv = 1.0 / double(m);
    auto forward = [&](const std::vector<double>& vals, SpectralArray& out) {
        for (std::size_t i = 0; i < m; ++i) spec[i] = Complex(vals[i], 0.0);
        out.resize(m);
        fft_forward(pad, spec.data(), out.data());
        for (Complex& z : out) z *= inv;
    };

    std::vector<double> usq(m), gd(m);
    for (std::size_t i = 0; i < m; ++i)
        usq[i] = uphys[0][i] * uphys[0][i] + uphys[1][i] * uphys[1][i] +
                 uphys[2][i] * uphys[2][i];

    SpectralArray usq_hat, gsq_hat;
    forward(usq, usq_hat);
    forward(gsq, gsq_hat);
    std::array<SpectralArray, 3> flux_hat;
    for (int d = 0; d < 3; ++d) {
        for (std::size_t i = 0; i < m; ++i)
            gd[i] = (usq[i] + 2.0 * pphys[i]) * uphys[d][i];
        forward(gd, flux_hat[d]);
    }

    double vol = g.box_length * g.box_length * g.box_length;
    SpaceSums s;
    for (int a = 0; a < pad.n; ++a)
        for (int b = 0; b < pad.n; ++b)
            for (int c = 0; c < pad.n; ++c) {
                std::size_t idx = pad.index(a, b, c);
                Complex ph = std::conj(bp.phi_hat(a, b, c));
                auto k = pad.wavevector(a, b, c);
                double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                s.phi_usq += (usq_hat[idx] * ph).real();
                s.lap_usq -= k2 * (usq_hat[idx] * ph).real();
                s.gradsq_phi += (gsq_hat[idx] * ph).real();
                for (int d = 0; d < 3; ++d)
                    s.flux += k[d] * (flux_hat[d][idx] * ph).imag();
            }
    s.phi_usq *= vol;
    s.lap_usq *= vol;
    s.flux *= vol;
    s.gradsq_phi *= vol;
    return s;
}

// lattice points inside the bump support, with phi, grad phi, lap phi there
void bump_tables(const Grid& g, const SpaceBump& phi, std::vector<std::size_t>& pts,
                 std::vector<double>& phiv, std::vector<std::array<double, 3>>& phig,
                 std::vector<double>& phil) {
    if (!(phi.radius > 0.0) || phi.radius >= 0.5 * g.box_length)
        throw std::invalid_argument("space bump: radius must lie in (0, box_length/2)");
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int c = 0; c < g.n; ++c) {
                std::array<double, 3> x{a * g.dx(), b * g.dx(), c * g.dx()};
                double v = phi.value(x, g.box_length);
                bool inside = true;
                for (int d = 0; d < 3 && inside; ++d)
                    if (std::abs(min_image(x[d] - phi.center[d], g.box_length)) >=
                        phi.radius)
                        inside = false;
                if (!inside) continue;
                pts.push_back(g.index(a, b, c));
                phiv.push_back(v);
                phig.push_back(phi.grad(x, g.box_length));
                phil.push_back(phi.laplacian(x, g.box_length));
            }
    if (pts.empty())
        throw std::invalid_argument("space bump: support contains no lattice points");
}

}  // namespace

LocalEnergyResult local_energy_residual(const Trajectory& traj, const SpaceBump& phi,
                                        const TimeBump& psi) {
    double t_lo = psi.center - psi.radius;
    double t_hi = psi.center + psi.radius;
    double slack = 1e-9 * std::max(1.0, std::abs(t_hi));
    if (t_lo < traj.times.front() - slack || t_hi > traj.times.back() + slack)
        throw std::invalid_argument(
            "local_energy_residual: temporal support leaves the trajectory range");
    auto sel = select_window(traj.times, t_lo, t_hi, (t_hi - t_lo) / 4.0,
                             "local_energy_residual");
    if (sel.size() < 5)
        throw std::invalid_argument("local_energy_residual: need >= 5 snapshots");

    BumpPairing bp(traj.grid, phi);
    std::vector<double> tsel, lhs_t, rhs_t;
    for (std::size_t i : sel) {
        double t = traj.times[i];
        SpaceSums s = exact_space_sums(traj.snapshots[i],
                                       pressure_from_velocity(traj.snapshots[i]), bp);
        double pv = psi.value(t), pd = psi.derivative(t);
        tsel.push_back(t);
        lhs_t.push_back(2.0 * s.gradsq_phi * pv);
        rhs_t.push_back(s.phi_usq * pd + s.lap_usq * pv + s.flux * pv);
    }
    LocalEnergyResult r;
    r.lhs = integrate_series(tsel, lhs_t);
    r.rhs = integrate_series(tsel, rhs_t);
    r.residual = r.rhs - r.lhs;
    r.residual_rel = std::abs(r.residual) / std::max(std::abs(r.lhs), 1e-300);
    return r;
}

LocalEnergyResult init_energy_residual(const Trajectory& traj, const SpaceBump& phi,
                                       double t_cut) {
    double slack = 1e-9 * std::max(1.0, t_cut);
    if (!(t_cut > 0.0) || t_cut > traj.times.back() + slack)
        throw std::invalid_argument("init_energy_residual: t_cut outside trajectory");
    auto sel = select_window(traj.times, traj.times.front(), t_cut, t_cut / 4.0,
                             "init_energy_residual");
    if (sel.size() < 5)
        throw std::invalid_argument("init_energy_residual: need >= 5 snapshots");

    BumpPairing bp(traj.grid, phi);
    std::vector<double> tsel, lhs_t, rhs_t;
    double data_term = 0.0;
    for (std::size_t j = 0; j < sel.size(); ++j) {
        std::size_t i = sel[j];
        double t = traj.times[i];
        SpaceSums s = exact_space_sums(traj.snapshots[i],
                                       pressure_from_velocity(traj.snapshots[i]), bp);
        if (j == 0) data_term = s.phi_usq;  // int |u0|^2 phi at the first time
        double pv = TimeBump::half_decay(t, t_cut);
        double pd = TimeBump::half_decay_derivative(t, t_cut);
        tsel.push_back(t);
        lhs_t.push_back(2.0 * s.gradsq_phi * pv);
        rhs_t.push_back(s.phi_usq * pd + s.lap_usq * pv + s.flux * pv);
    }
    LocalEnergyResult r;
    r.lhs = integrate_series(tsel, lhs_t);
    r.rhs = data_term + integrate_series(tsel, rhs_t);
    r.residual = r.rhs - r.lhs;
    r.residual_rel = std::abs(r.residual) / std::max(std::abs(r.lhs), 1e-300);
    return r;
}

double initial_attainment_rate(const Trajectory& traj, const SpaceBump& w, int points) {
    if (points < 2)
        throw std::invalid_argument("initial_attainment_rate: need >= 2 points");
    if (traj.times.size() < std::size_t(points) + 1)
        throw std::invalid_argument("initial_attainment_rate: trajectory too short");

    std::vector<std::size_t> pts;
    std::vector<double> phiv, phil;
    std::vector<std::array<double, 3>> phig;
    bump_tables(traj.grid, w, pts, phiv, phig, phil);

    PhysicalField base = to_physical(traj.snapshots.front());
    double cv = traj.grid.cell_volume();
    std::vector<double> lt, ld;
    for (int j = 1; j <= points; ++j) {
        double t = traj.times[j];
        if (!(t > 0.0)) continue;
        PhysicalField cur = to_physical(traj.snapshots[j]);
        double s = 0.0;
        for (std::size_t q = 0; q < pts.size(); ++q) {
            std::size_t x = pts[q];
            double d2 = 0.0;
            for (int c = 0; c < 3; ++c) {
                double d = cur.at(c, x) - base.at(c, x);
                d2 += d * d;
            }
            s += d2 * phiv[q] * phiv[q];
        }
        double norm = std::sqrt(s * cv);
        if (norm <= 0.0) continue;
        lt.push_back(std::log(t));
        ld.push_back(std::log(norm));
    }
    if (lt.size() < 2)
        throw std::invalid_argument("initial_attainment_rate: degenerate difference norms");
    // least-squares slope
    double mt = 0.0, md = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        mt += lt[i];
        md += ld[i];
    }
    mt /= double(lt.size());
    md /= double(lt.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        num += (lt[i] - mt) * (ld[i] - md);
        den += (lt[i] - mt) * (lt[i] - mt);
    }
    return num / den;
}

namespace {

double energy_sq_with_cache(SnapshotCache& cache, const TildeCylinder& cyl) {
    const Trajectory& traj = cache.traj;
    const Grid& g = traj.grid;
    if (!(cyl.radius > 0.0) || cyl.radius >= 0.5 * g.box_length)
        throw std::invalid_argument(
            "local_energy_norm_sq: radius must lie in (0, box_length/2)");
    double r2 = cyl.radius * cyl.radius;
    double slack = 1e-9 * std::max(1.0, r2);
    if (r2 > traj.times.back() + slack)
        throw std::invalid_argument(
            "local_energy_norm_sq: horizon too short for the tilde cylinder");
    auto sel = select_window(traj.times, traj.times.front(), r2, r2 / 4.0,
                             "local_energy_norm_sq");
    auto ball = ball_indices(g, cyl.center, cyl.radius);
    if (ball.size() < 8)
        throw std::invalid_argument(
            "local_energy_norm_sq: ball resolves too few lattice points");

    double cv = g.cell_volume();
    double sup_mass = 0.0;
    std::vector<double> tsel, dsel;
    for (std::size_t i : sel) {
        const PhysicalField& u = cache.velocity(i);
        const std::vector<double>& gsq = cache.grad_sq(i);
        double mass = 0.0, diss = 0.0;
        for (std::size_t x : ball) {
            double um = u.magnitude(x);
            mass += um * um;
            diss += gsq[x];
        }
        if (traj.times[i] > 0.0) sup_mass = std::max(sup_mass, mass * cv);
        tsel.push_back(traj.times[i]);
        dsel.push_back(diss * cv);
    }
    return sup_mass + integrate_series(tsel, dsel);
}

}  // namespace

double local_energy_norm_sq(const Trajectory& traj, const TildeCylinder& cyl) {
    SnapshotCache cache(traj);
    return energy_sq_with_cache(cache, cyl);
}

DiagnosticsRecord decay_diagnostic(const Trajectory& traj, int order) {
    if (order < 0 || order > 3)
        throw std::invalid_argument("decay_diagnostic: order must be 0..3");
    DiagnosticsRecord rec;
    std::vector<double> times, values;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        double t = traj.times[i];
        if (!(t > 0.0)) continue;
        std::vector<double> gsq = grad_tensor_sq(traj.snapshots[i], order);
        double sup = 0.0;
        for (double v : gsq) sup = std::max(sup, v);
        times.push_back(t);
        values.push_back(std::pow(t, 0.5 * (order + 1)) * std::sqrt(sup));
    }
    if (times.empty())
        throw std::invalid_argument("decay_diagnostic: no snapshots at positive times");
    rec.set_times(std::move(times));
    rec.add_series("decay_l" + std::to_string(order), std::move(values));
    return rec;
}

double derivative_bound_check(const Trajectory& traj, const ParabolicCylinder& cyl,
                              int order) {
    const Grid& g = traj.grid;
    if (order < 0 || order > 3)
        throw std::invalid_argument("derivative_bound_check: order must be 0..3");
    if (!(cyl.radius > 0.0) || cyl.radius >= 0.5 * g.box_length)
        throw std::invalid_argument(
            "derivative_bound_check: radius must lie in (0, box_length/2)");
    double half = 0.5 * cyl.radius;
    auto sel = select_window(traj.times, cyl.t_top - half * half, cyl.t_top,
                             half * half / 2.0, "derivative_bound_check");
    auto ball = ball_indices(g, cyl.center, half);
    if (ball.empty())
        throw std::invalid_argument(
            "derivative_bound_check: half ball resolves no lattice points");
    double sup = 0.0;
    for (std::size_t i : sel) {
        std::vector<double> gsq = grad_tensor_sq(traj.snapshots[i], order);
        for (std::size_t x : ball) sup = std::max(sup, gsq[x]);
    }
    return std::sqrt(sup) * std::pow(cyl.radius, 1.0 + order);
}

double time_holder_quotient(const Trajectory& traj, const ParabolicCylinder& cyl) {
    const Grid& g = traj.grid;
    if (!(cyl.radius > 0.0) || cyl.radius >= 0.5 * g.box_length)
        throw std::invalid_argument(
            "time_holder_quotient: radius must lie in (0, box_length/2)");
    double half = 0.5 * cyl.radius;
    auto sel = select_window(traj.times, cyl.t_top - half * half, cyl.t_top,
                             half * half / 2.0, "time_holder_quotient");
    if (sel.size() < 4)
        throw std::invalid_argument(
            "time_holder_quotient: need >= 4 snapshots in the half cylinder");
    auto ball = ball_indices(g, cyl.center, half);
    if (ball.empty())
        throw std::invalid_argument("time_holder_quotient: half ball resolves no points");

    std::vector<PhysicalField> phys;
    phys.reserve(sel.size());
    for (std::size_t i : sel) phys.push_back(to_physical(traj.snapshots[i]));

    double worst = 0.0;
    for (std::size_t a = 0; a < sel.size(); ++a)
        for (std::size_t b = a + 1; b < sel.size(); ++b) {
            double dt = traj.times[sel[b]] - traj.times[sel[a]];
            if (dt <= 0.0) continue;
            double sup = 0.0;
            for (std::size_t x : ball) {
                double d2 = 0.0;
                for (int c = 0; c < 3; ++c) {
                    double d = phys[b].at(c, x) - phys[a].at(c, x);
                    d2 += d * d;
                }
                sup = std::max(sup, d2);
            }
            worst = std::max(worst, std::sqrt(sup) / std::cbrt(dt));
        }
    return worst;
}

std::vector<SweepRow> cylinder_sweep(const Trajectory& traj,
                                     const std::vector<std::array<double, 3>>& centers,
                                     const std::vector<double>& radii,
                                     const std::vector<double>& t_tops,
                                     double eps0) {
    SnapshotCache cache(traj);
    std::vector<SweepRow> rows;
    for (const auto& c : centers)
        for (double t_top : t_tops)
            for (double r : radii) {
                SweepRow row;
                row.center = c;
                row.t_top = t_top;
                row.radius = r;
                row.ckn = ckn_with_cache(cache, ParabolicCylinder{c, t_top, r});
                row.classification = classify_point(row.ckn, eps0);
                row.energy_sq = energy_sq_with_cache(cache, TildeCylinder{c, r});
                row.energy_over_r = row.energy_sq / r;
                rows.push_back(row);
            }
    return rows;
}

}  // namespace nscrit
