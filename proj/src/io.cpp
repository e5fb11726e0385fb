#include "adm/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "adm/transform.hpp"
#include "adm/version.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian");

namespace adm {

const char* const kDiagnosticsHeader =
    "t,y,z,Y,Z,R1sq,R2sq,chi_value,dn_state_norm,p_norm,q_norm,cone_margin";

namespace {

void append_cell(std::string& out, double v) {
    if (std::isnan(v)) return;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace

std::string diagnostics_csv_text(const std::vector<DiagnosticsRow>& rows,
                                 const std::map<std::string, std::string>& meta) {
    std::string out;
    out += "# adm ";
    out += kVersion;
    out += "\n";
    for (const auto& [key, value] : meta) {
        out += "# ";
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    }
    out += kDiagnosticsHeader;
    out += "\n";
    for (const DiagnosticsRow& r : rows) {
        const double cells[12] = {r.t,   r.y,         r.z,
                                  r.Y,   r.Z,         r.R1sq,
                                  r.R2sq, r.chi_value, r.dn_state_norm,
                                  r.p_norm, r.q_norm,  r.cone_margin};
        for (int c = 0; c < 12; ++c) {
            if (c > 0) out += ',';
            append_cell(out, cells[c]);
        }
        out += '\n';
    }
    return out;
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRow>& rows,
                           const std::map<std::string, std::string>& meta) {
    write_text_file(path, diagnostics_csv_text(rows, meta));
}

namespace {

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T take(std::ifstream& in, const std::string& path) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw ConfigError("truncated snapshot file '" + path + "'");
    return v;
}

constexpr uint32_t kSnapshotVersion = 1;

} // namespace

void write_snapshot(const std::string& path, const State& V) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write snapshot '" + path + "'");
    const TorusGrid& g = V.grid();
    out.write("ADM2", 4);
    put<uint32_t>(out, kSnapshotVersion);
    put<double>(out, g.L());
    put<uint32_t>(out, static_cast<uint32_t>(g.M()));
    for (const SpectralScalar* f : {&V.v.x, &V.v.y, &V.theta}) {
        const RealField r = transform_inverse(*f);
        out.write(reinterpret_cast<const char*>(r.data()),
                  static_cast<std::streamsize>(r.size() * sizeof(double)));
    }
    if (!out) throw ConfigError("failed writing snapshot '" + path + "'");
}

State read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open snapshot '" + path + "'");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "ADM2", 4) != 0)
        throw ConfigError("'" + path + "' is not a state snapshot");
    const uint32_t version = take<uint32_t>(in, path);
    if (version != kSnapshotVersion)
        throw ConfigError("unsupported snapshot version in '" + path + "'");
    const double L = take<double>(in, path);
    const uint32_t M = take<uint32_t>(in, path);
    const TorusGrid g(L, static_cast<int>(M));

    State V(g);
    for (SpectralScalar* f : {&V.v.x, &V.v.y, &V.theta}) {
        RealField r(g);
        in.read(reinterpret_cast<char*>(r.data()),
                static_cast<std::streamsize>(r.size() * sizeof(double)));
        if (!in) throw ConfigError("truncated snapshot file '" + path + "'");
        *f = transform_forward(r);
    }
    return V;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write file '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("failed writing file '" + path + "'");
}

} // namespace adm
