#include "nscrit/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nscrit {

namespace {

constexpr char kMagic[4] = {'N', 'S', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 32;

void write_impl(const std::string& path, const SpectralArray* comps, int ncomp,
                const Grid& grid, double time) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("snapshot: cannot open " + path + " for writing");
    std::uint32_t n = std::uint32_t(grid.n), nc = std::uint32_t(ncomp);
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&kVersion), 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&nc), 4);
    out.write(reinterpret_cast<const char*>(&grid.box_length), 8);
    out.write(reinterpret_cast<const char*>(&time), 8);
    for (int c = 0; c < ncomp; ++c)
        out.write(reinterpret_cast<const char*>(comps[c].data()),
                  std::streamsize(comps[c].size() * sizeof(Complex)));
    if (!out)
        throw std::runtime_error("snapshot: short write to " + path);
}

}  // namespace

void write_snapshot(const std::string& path, const SpectralVelocity& u, double time) {
    write_impl(path, u.coeffs.data(), 3, u.grid, time);
}

void write_snapshot(const std::string& path, const ScalarSpectralField& f, double time) {
    write_impl(path, &f.coeffs, 1, f.grid, time);
}

SpectralVelocity LoadedSnapshot::as_velocity() const {
    if (components != 3)
        throw std::runtime_error("snapshot: expected 3 components, file has " +
                                 std::to_string(components));
    SpectralVelocity u(grid);
    u.coeffs = coeffs;
    return u;
}

ScalarSpectralField LoadedSnapshot::as_scalar() const {
    if (components != 1)
        throw std::runtime_error("snapshot: expected 1 component, file has " +
                                 std::to_string(components));
    ScalarSpectralField f(grid);
    f.coeffs = coeffs[0];
    return f;
}

LoadedSnapshot read_snapshot(const std::string& path, double dealias_fraction) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("snapshot: cannot open " + path);
    char header[kHeaderBytes];
    in.read(header, kHeaderBytes);
    if (in.gcount() != std::streamsize(kHeaderBytes))
        throw std::runtime_error("snapshot: " + path + " truncated at byte offset " +
                                 std::to_string(in.gcount()) + " (header needs 32 bytes)");
    if (std::memcmp(header, kMagic, 4) != 0)
        throw std::runtime_error("snapshot: " + path + " has bad magic at byte offset 0");
    std::uint32_t version, n, ncomp;
    double box_length, time;
    std::memcpy(&version, header + 4, 4);
    std::memcpy(&n, header + 8, 4);
    std::memcpy(&ncomp, header + 12, 4);
    std::memcpy(&box_length, header + 16, 8);
    std::memcpy(&time, header + 24, 8);
    if (version != kVersion)
        throw std::runtime_error("snapshot: " + path + " has unsupported version " +
                                 std::to_string(version) + " at byte offset 4");
    if (ncomp != 1 && ncomp != 3)
        throw std::runtime_error("snapshot: " + path + " has invalid component count " +
                                 std::to_string(ncomp) + " at byte offset 12");

    LoadedSnapshot snap;
    snap.time = time;
    snap.components = int(ncomp);
    snap.grid = Grid(int(n), box_length, dealias_fraction);

    std::size_t per_comp = snap.grid.num_modes();
    for (std::uint32_t c = 0; c < ncomp; ++c) {
        snap.coeffs[c].resize(per_comp);
        std::streamsize want = std::streamsize(per_comp * sizeof(Complex));
        in.read(reinterpret_cast<char*>(snap.coeffs[c].data()), want);
        if (in.gcount() != want) {
            std::size_t offset = kHeaderBytes +
                                 std::size_t(c) * per_comp * sizeof(Complex) +
                                 std::size_t(in.gcount());
            throw std::runtime_error("snapshot: " + path + " truncated at byte offset " +
                                     std::to_string(offset) + " (expected " +
                                     std::to_string(kHeaderBytes +
                                                    ncomp * per_comp * sizeof(Complex)) +
                                     " bytes total)");
        }
        double defect = hermitian_defect(snap.grid, snap.coeffs[c]);
        if (defect > 1e-8)
            throw std::runtime_error("snapshot: " + path + " component " +
                                     std::to_string(c) +
                                     " violates conjugate symmetry (defect " +
                                     std::to_string(defect) + ")");
    }
    return snap;
}

}  // namespace nscrit
