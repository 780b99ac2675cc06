#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vvb/field.hpp"

namespace vvb {

/// Deterministic shortest-roundtrip double formatting for CSV output.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// flat binary snapshots
// header: magic 'VVBF', version u32, dim i32, n i32, components i32, L f64
// payload: component-major row-major float64 little-endian samples
// ---------------------------------------------------------------------------

namespace detail {
constexpr std::uint32_t kFieldMagic = 0x46425656;  // "VVBF"
constexpr std::uint32_t kFieldVersion = 1;

template <typename T>
void write_raw(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
void read_raw(std::ifstream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace detail

inline void write_field(const std::string& path, const PhysicalField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field: cannot open " + path);
    detail::write_raw(os, detail::kFieldMagic);
    detail::write_raw(os, detail::kFieldVersion);
    detail::write_raw(os, static_cast<std::int32_t>(f.grid.dim));
    detail::write_raw(os, static_cast<std::int32_t>(f.grid.n));
    detail::write_raw(os, static_cast<std::int32_t>(f.components));
    detail::write_raw(os, f.grid.length);
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!os) throw std::runtime_error("write_field: write failed for " + path);
}

inline PhysicalField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field: cannot open " + path);
    std::uint32_t magic = 0, version = 0;
    std::int32_t dim = 0, n = 0, comps = 0;
    double length = 0.0;
    detail::read_raw(is, magic);
    detail::read_raw(is, version);
    detail::read_raw(is, dim);
    detail::read_raw(is, n);
    detail::read_raw(is, comps);
    detail::read_raw(is, length);
    if (magic != detail::kFieldMagic || version != detail::kFieldVersion)
        throw std::runtime_error("read_field: bad header in " + path);
    PhysicalField f(make_grid(dim, n, length), comps);
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!is) throw std::runtime_error("read_field: truncated payload in " + path);
    return f;
}

/// CSV dump for small grids: coordinates then one column per component.
inline void write_field_csv(const std::string& path, const PhysicalField& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_field_csv: cannot open " + path);
    os << "x,y";
    if (f.grid.dim == 3) os << ",z";
    for (int c = 0; c < f.components; ++c) os << ",c" << c;
    os << "\n";
    for (std::size_t i = 0; i < f.grid.points(); ++i) {
        const auto ix = f.grid.unflatten(i);
        os << format_double(f.grid.coord(ix[0])) << "," << format_double(f.grid.coord(ix[1]));
        if (f.grid.dim == 3) os << "," << format_double(f.grid.coord(ix[2]));
        for (int c = 0; c < f.components; ++c) os << "," << format_double(f.at(c, i));
        os << "\n";
    }
}

/// Minimal CSV table writer with deterministic float formatting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
    void write(const std::string& path) const {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("CsvTable: cannot open " + path);
        for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << "\n";
        }
    }
};

}  // namespace vvb
