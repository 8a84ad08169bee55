#include "dkg/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace dkg {

namespace {

constexpr char kMagic[4] = {'D', 'K', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "DKGF writer assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

void write_header(std::ostream& os, FieldKind kind, const GridSpec& g, Rep rep) {
    os.write(kMagic, 4);
    put<std::uint32_t>(os, kVersion);
    put<std::uint8_t>(os, std::uint8_t(kind));
    put<std::uint32_t>(os, std::uint32_t(g.n_x));
    put<std::uint32_t>(os, std::uint32_t(g.n_t));
    put<double>(os, g.period_L);
    put<double>(os, g.window_T);
    put<std::uint8_t>(os, std::uint8_t(rep));
}

void write_values(std::ostream& os, const std::vector<cplx>& v) {
    for (const cplx& c : v) {
        put<double>(os, c.real());
        put<double>(os, c.imag());
    }
}

std::vector<cplx> read_values(std::istream& is, std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& c : v) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        c = {re, im};
    }
    if (!is) throw std::runtime_error("DKGF: truncated payload");
    return v;
}

} // namespace

void write_field(std::ostream& os, const ScalarField& f) {
    write_header(os, FieldKind::scalar, f.grid(), f.rep());
    write_values(os, f.values());
}
void write_field(std::ostream& os, const SpinorField& f) {
    write_header(os, FieldKind::spinor, f.grid(), f.rep());
    write_values(os, f.values());
}
void write_field(std::ostream& os, const SpaceTimeField& f) {
    write_header(os, FieldKind::spacetime, f.grid(), f.rep());
    write_values(os, f.values());
}

void write_field_file(const std::string& path, const AnyField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("DKGF: cannot open " + path + " for writing");
    std::visit([&](const auto& field) { write_field(os, field); }, f);
}

AnyField read_field(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("DKGF: bad magic");
    const auto version = get<std::uint32_t>(is);
    if (version != kVersion)
        throw std::runtime_error("DKGF: unsupported version " + std::to_string(version));
    const auto kind = FieldKind(get<std::uint8_t>(is));
    GridSpec g;
    g.n_x = int(get<std::uint32_t>(is));
    g.n_t = int(get<std::uint32_t>(is));
    g.period_L = get<double>(is);
    g.window_T = get<double>(is);
    const Rep rep = Rep(get<std::uint8_t>(is));
    if (!is) throw std::runtime_error("DKGF: truncated header");

    switch (kind) {
        case FieldKind::scalar: {
            ScalarField f(g, rep);
            f.values() = read_values(is, g.spatial_size());
            return f;
        }
        case FieldKind::spinor: {
            SpinorField f(g, rep);
            f.values() = read_values(is, 2 * g.spatial_size());
            return f;
        }
        case FieldKind::spacetime: {
            // Component count is not part of the header; probe the payload.
            const auto pos = is.tellg();
            is.seekg(0, std::ios::end);
            const auto end = is.tellg();
            is.seekg(pos);
            const std::size_t doubles = std::size_t(end - pos) / sizeof(double);
            const std::size_t per_comp = 2 * g.total_size();
            const int ncomp = int(doubles / per_comp);
            if (ncomp != 1 && ncomp != 2)
                throw std::runtime_error("DKGF: space-time payload size is inconsistent");
            SpaceTimeField f(g, ncomp, rep);
            f.values() = read_values(is, std::size_t(ncomp) * g.total_size());
            return f;
        }
    }
    throw std::runtime_error("DKGF: unknown field kind");
}

AnyField read_field_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("DKGF: cannot open " + path);
    return read_field(is);
}

} // namespace dkg
