#include "photonlab/runner/export.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>
#include <vector>

#include <openssl/evp.h>

namespace photonlab::runner {

namespace {

constexpr double kHbar = 1.054571817e-34;  // J s
constexpr double kLightSpeed = 299792458.0;  // m / s

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_vec(const Vec3& v, double scale = 1.0) {
    return fmt_double(v[0] * scale) + "," + fmt_double(v[1] * scale) + "," + fmt_double(v[2] * scale);
}

void append_le(std::string& out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t r = 0;
        for (int b = 0; b < 8; ++b) r |= ((bits >> (8 * b)) & 0xffu) << (8 * (7 - b));
        bits = r;
    }
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    out.append(bytes, 8);
}

}  // namespace

UnitScale length_unit(const UnitsSpec& units) {
    if (!units.si) return {};
    return {units.length_scale, "m"};
}

UnitScale time_unit(const UnitsSpec& units) {
    if (!units.si) return {};
    return {units.length_scale / kLightSpeed, "s"};
}

UnitScale density_unit(density::DensityKind kind, const UnitsSpec& units) {
    if (!units.si) return {};
    using density::DensityKind;
    const double l = units.length_scale;
    const double l3 = l * l * l;
    switch (kind) {
        case DensityKind::number:
        case DensityKind::lp_number: return {1.0 / l3, "m^-3"};
        case DensityKind::current: return {kLightSpeed / l3, "m^-2 s^-1"};
        case DensityKind::energy:
        case DensityKind::bb_energy: return {kHbar * kLightSpeed / (l3 * l), "J m^-3"};
        case DensityKind::momentum: return {kHbar / (l3 * l), "kg m^-2 s^-1"};
        case DensityKind::four_momentum: return {kHbar * kLightSpeed / (l3 * l), "J m^-3 (H, cP)"};
        case DensityKind::angular_momentum:
        case DensityKind::helicity: return {kHbar / l3, "J s m^-3"};
    }
    return {};
}

namespace {

std::string encode_components(const std::string& kind, const field::SpatialGrid& g, double t,
                              const std::vector<const std::vector<double>*>& components, const UnitScale& scale,
                              const UnitsSpec& units) {
    const auto len = length_unit(units);
    std::string out = "photonlab-array v1 kind=" + kind + " shape=" + std::to_string(g.extent()[0]) + "," +
                      std::to_string(g.extent()[1]) + "," + std::to_string(g.extent()[2]) +
                      " components=" + std::to_string(components.size()) + " dtype=float64-le units=" +
                      scale.label + " t=" + fmt_double(t * time_unit(units).factor) +
                      " origin=" + fmt_vec(g.origin(), len.factor) + " spacing=" + fmt_vec(g.delta_x(), len.factor);
    out += '\n';
    out.reserve(out.size() + 8 * components.size() * g.size());
    for (const auto* comp : components)
        for (double v : *comp) append_le(out, v * scale.factor);
    return out;
}

}  // namespace

std::string encode_array(const density::DensityField& d, const UnitsSpec& units) {
    std::vector<const std::vector<double>*> comps;
    for (const auto& c : d.components) comps.push_back(&c);
    return encode_components(std::string(density::to_string(d.kind)), d.grid, d.t, comps,
                             density_unit(d.kind, units), units);
}

std::string encode_fields(const field::FieldSnapshot& f, const UnitsSpec& units) {
    std::vector<std::vector<double>> parts;
    for (const auto* field : {&f.A_plus, &f.E_plus, &f.B_plus})
        for (int c = 0; c < 3; ++c) {
            std::vector<double> re((*field)[c].size()), im((*field)[c].size());
            for (std::size_t j = 0; j < re.size(); ++j) {
                re[j] = (*field)[c][j].real();
                im[j] = (*field)[c][j].imag();
            }
            parts.push_back(std::move(re));
            parts.push_back(std::move(im));
        }
    std::vector<const std::vector<double>*> comps;
    for (const auto& p : parts) comps.push_back(&p);
    UnitScale scale;
    if (units.si) scale.label = "natural(fields)";
    return encode_components("positive_frequency_fields", f.xgrid, f.t, comps, scale, units);
}

std::string encode_slice_csv(const density::DensityField& d, const SlicePlane& plane, const UnitsSpec& units) {
    const auto& g = d.grid;
    const auto& n = g.extent();
    const int a = plane.axis;
    const double h = g.delta_x()[a];
    const double L = g.box_length()[a];
    const auto len = length_unit(units);
    const auto scale = density_unit(d.kind, units);

    // nearest plane on the periodic axis
    double rel = std::fmod((plane.value / len.factor) - g.origin()[a], L);
    if (rel < 0) rel += L;
    std::size_t idx = static_cast<std::size_t>(std::llround(rel / h)) % n[a];

    const int u = a == 0 ? 1 : 0;
    const int v = a == 2 ? 1 : 2;
    static constexpr const char* names = "xyz";
    std::ostringstream out;
    out << "# kind=" << density::to_string(d.kind) << " plane=" << names[a] << "="
        << fmt_double((g.origin()[a] + static_cast<double>(idx) * h) * len.factor)
        << " t=" << fmt_double(d.t * time_unit(units).factor) << " units=" << scale.label << "\n";
    out << names[u] << "," << names[v];
    for (std::size_t c = 0; c < d.components.size(); ++c) out << ",c" << c;
    out << "\n";
    for (std::size_t i = 0; i < n[u]; ++i) {
        for (std::size_t j = 0; j < n[v]; ++j) {
            std::array<std::size_t, 3> m{};
            m[a] = idx;
            m[u] = i;
            m[v] = j;
            const std::size_t flat = flat_index(n, m[0], m[1], m[2]);
            const Vec3 x = g.x(flat);
            out << fmt_double(x[u] * len.factor) << "," << fmt_double(x[v] * len.factor);
            for (const auto& comp : d.components) out << "," << fmt_double(comp[flat] * scale.factor);
            out << "\n";
        }
    }
    return out.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write '" + tmp.string() + "'");
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!f) throw Error("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("cannot rename '" + tmp.string() + "': " + ec.message());
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

namespace {

struct Row {
    double t;
    Vec3 x;
    double c_rho;
    Vec3 j;
};

/// Sorted distinct values, merged within a relative tolerance.
std::vector<double> distinct(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || std::abs(x - out.back()) > 1e-9 * std::max(1.0, std::abs(x))) out.push_back(x);
    return out;
}

double uniform_step(const std::vector<double>& v, const char* what) {
    if (v.size() < 2) return 1.0;
    const double h = (v.back() - v.front()) / static_cast<double>(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i] - v[i - 1] - h) > 1e-6 * h) throw Error(std::string("source columns: non-uniform ") + what);
    return h;
}

std::size_t locate(const std::vector<double>& v, double x) {
    const auto it = std::lower_bound(v.begin(), v.end(), x - 1e-9 * std::max(1.0, std::abs(x)));
    return static_cast<std::size_t>(it - v.begin());
}

}  // namespace

retarded::SourceCurrent read_source_columns(std::istream& in) {
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        Row r{};
        if (!(ls >> r.t >> r.x[0] >> r.x[1] >> r.x[2] >> r.c_rho >> r.j[0] >> r.j[1] >> r.j[2]))
            throw Error("source columns: line " + std::to_string(line_no) + ": expected 8 numbers");
        rows.push_back(r);
    }
    if (rows.empty()) throw Error("source columns: no samples");

    std::vector<double> ts;
    std::array<std::vector<double>, 3> xs;
    for (const auto& r : rows) {
        ts.push_back(r.t);
        for (int a = 0; a < 3; ++a) xs[a].push_back(r.x[a]);
    }
    ts = distinct(std::move(ts));
    retarded::Lattice lattice;
    for (int a = 0; a < 3; ++a) {
        xs[a] = distinct(std::move(xs[a]));
        lattice.n[a] = xs[a].size();
        lattice.spacing[a] = uniform_step(xs[a], "spacing");
        lattice.origin[a] = xs[a].front();
    }
    const retarded::TimeAxis axis{ts.size(), ts.front(), uniform_step(ts, "time step")};
    if (rows.size() != lattice.size() * axis.count) throw Error("source columns: samples do not fill the lattice");

    retarded::SourceCurrent src(lattice, axis);
    for (const auto& r : rows) {
        const std::size_t cell = flat_index(lattice.n, locate(xs[0], r.x[0]), locate(xs[1], r.x[1]),
                                            locate(xs[2], r.x[2]));
        src.set(locate(ts, r.t), cell, r.c_rho, r.j);
    }
    return src;
}

std::string write_source_columns(const retarded::SourceCurrent& src) {
    std::string out = "# t x y z c_rho jx jy jz\n";
    const auto& lat = src.lattice();
    for (std::size_t it = 0; it < src.time_axis().count; ++it) {
        for (std::size_t c = 0; c < lat.size(); ++c) {
            const Vec3 x = lat.point(c);
            const Vec3 j = src.current(it, c);
            out += fmt_double(src.time_axis().time(it)) + " " + fmt_double(x[0]) + " " + fmt_double(x[1]) + " " +
                   fmt_double(x[2]) + " " + fmt_double(src.charge(it, c)) + " " + fmt_double(j[0]) + " " +
                   fmt_double(j[1]) + " " + fmt_double(j[2]) + "\n";
        }
    }
    return out;
}

}  // namespace photonlab::runner
