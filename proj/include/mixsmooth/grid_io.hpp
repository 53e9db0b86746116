#pragma once

// Binary container for grid functions. All fields little-endian:
//
//   offset  size     field
//   0       8        magic "MXSGRID" followed by a zero byte
//   8       4        u32 version (1)
//   12      4        u32 d (1..3)
//   16      8 d      u64 n_i, samples per axis
//   ..      8 d      f64 L_i, period per axis
//   ..      1        u8 layout, 0 = row-major with the last axis fastest
//   ..      16 N     complex samples as interleaved f64 (re, im), N = prod n_i

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "mixsmooth/error.hpp"
#include "mixsmooth/grid.hpp"

namespace mixsmooth {

namespace io {

inline constexpr std::array<char, 8> magic = {'M', 'X', 'S', 'G', 'R', 'I', 'D', '\0'};
inline constexpr std::uint32_t version = 1;
inline constexpr std::uint8_t layout_row_major = 0;

namespace detail {

template <class T>
void put(std::ostream& os, T v) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get(std::istream& is, const char* what) {
    unsigned char b[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw FormatError(std::string("truncated container: missing ") + what);
    if constexpr (std::endian::native == std::endian::big)
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    T v;
    std::memcpy(&v, b, sizeof(T));
    return v;
}

} // namespace detail

inline void write(std::ostream& os, const GridFunction& f) {
    const Grid& g = f.grid();
    os.write(magic.data(), magic.size());
    detail::put<std::uint32_t>(os, version);
    detail::put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim()));
    for (int i = 0; i < g.dim(); ++i) detail::put<std::uint64_t>(os, g.points(i));
    for (int i = 0; i < g.dim(); ++i) detail::put<double>(os, g.period(i));
    detail::put<std::uint8_t>(os, layout_row_major);
    for (const auto& z : f.samples()) {
        detail::put<double>(os, z.real());
        detail::put<double>(os, z.imag());
    }
    if (!os) throw IoError("failed writing grid function");
}

inline GridFunction read(std::istream& is) {
    std::array<char, 8> m{};
    if (!is.read(m.data(), m.size()) || m != magic) throw FormatError("not a grid-function container (bad magic)");
    const auto ver = detail::get<std::uint32_t>(is, "version");
    if (ver != version) throw FormatError("unsupported container version " + std::to_string(ver));
    const auto d = detail::get<std::uint32_t>(is, "dimension");
    if (d < 1 || d > static_cast<std::uint32_t>(Grid::max_dim)) throw FormatError("container dimension out of range");
    std::vector<std::size_t> n;
    std::vector<double> period;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        const auto ni = detail::get<std::uint64_t>(is, "axis length");
        if (ni < 2 || (ni & (ni - 1)) != 0 || ni > (std::uint64_t{1} << 30)) throw FormatError("axis length must be a power of two >= 2");
        total *= ni;
        if (total > (std::uint64_t{1} << 30)) throw FormatError("container grid too large");
        n.push_back(static_cast<std::size_t>(ni));
    }
    for (std::uint32_t i = 0; i < d; ++i) period.push_back(detail::get<double>(is, "period"));
    if (detail::get<std::uint8_t>(is, "layout") != layout_row_major) throw FormatError("unsupported sample layout");
    Grid g = [&] {
        try {
            return Grid(std::move(n), std::move(period));
        } catch (const InvalidParams& e) {
            throw FormatError(std::string("invalid grid header: ") + e.what());
        }
    }();
    cvec samples(g.size());
    for (auto& z : samples) {
        const double re = detail::get<double>(is, "samples");
        const double im = detail::get<double>(is, "samples");
        z = {re, im};
    }
    if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after samples");
    try {
        return {std::move(g), std::move(samples)};
    } catch (const InvalidParams& e) {
        throw FormatError(std::string("invalid samples: ") + e.what());
    }
}

inline void save(const std::string& path, const GridFunction& f) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write(os, f);
    os.close();
    if (!os) throw IoError("failed writing '" + path + "'");
}

inline GridFunction load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "'");
    return read(is);
}

} // namespace io

} // namespace mixsmooth
