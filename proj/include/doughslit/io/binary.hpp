#ifndef DOUGHSLIT_IO_BINARY_HPP
#define DOUGHSLIT_IO_BINARY_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "doughslit/error.hpp"
#include "doughslit/qsolve/field.hpp"

namespace doughslit::io {

/*
 * QF2 / QM2 layout, all little-endian:
 *   4 bytes magic ("QF2\0" or "QM2\0"), u32 n_x, u32 n_y, f64 length, f64 time,
 *   then n_x * n_y points in row-major order (x index outer): QF2 stores
 *   (re, im) pairs, QM2 a single modulus value.
 */

namespace detail {

inline void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<unsigned char>(v >> (8 * b)));
}

inline void put_f64(std::vector<unsigned char>& out, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<unsigned char>(v >> (8 * b)));
}

inline std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(p[b]) << (8 * b);
    return v;
}

inline double get_f64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
    return std::bit_cast<double>(v);
}

constexpr std::size_t header_size = 4 + 4 + 4 + 8 + 8;

inline std::vector<unsigned char> header(const char (&magic)[4], const qsolve::Grid& g, double time) {
    std::vector<unsigned char> out(magic, magic + 4);
    put_u32(out, static_cast<std::uint32_t>(g.n_x));
    put_u32(out, static_cast<std::uint32_t>(g.n_y));
    put_f64(out, g.length);
    put_f64(out, time);
    return out;
}

inline void write_bytes(const std::string& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("failed writing '" + path + "'");
}

inline std::vector<unsigned char> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Header {
    qsolve::Grid grid;
    double time = 0.0;
};

inline Header parse_header(const std::vector<unsigned char>& bytes, const char (&magic)[4],
                           std::size_t bytes_per_point, const std::string& path) {
    if (bytes.size() < header_size || std::memcmp(bytes.data(), magic, 4) != 0)
        throw ParseError(path + ": bad magic or truncated header");
    Header h;
    h.grid.n_x = get_u32(bytes.data() + 4);
    h.grid.n_y = get_u32(bytes.data() + 8);
    h.grid.length = get_f64(bytes.data() + 12);
    h.time = get_f64(bytes.data() + 20);
    const std::size_t expected = header_size + h.grid.n_x * h.grid.n_y * bytes_per_point;
    if (bytes.size() != expected)
        throw ParseError(path + ": payload length " + std::to_string(bytes.size() - header_size) +
                         " does not match header dimensions " + std::to_string(h.grid.n_x) + "x" +
                         std::to_string(h.grid.n_y));
    return h;
}

}  // namespace detail

inline void write_qf2(const std::string& path, const qsolve::ComplexField2D& f, double time) {
    auto bytes = detail::header({'Q', 'F', '2', '\0'}, f.grid, time);
    bytes.reserve(bytes.size() + f.values.size() * 16);
    for (const auto& v : f.values.flat()) {
        detail::put_f64(bytes, v.real());
        detail::put_f64(bytes, v.imag());
    }
    detail::write_bytes(path, bytes);
}

inline void write_qm2(const std::string& path, const qsolve::ModulusFrame& m, const qsolve::Grid& g, double time) {
    if (m.rows() != g.n_x || m.cols() != g.n_y) throw InvalidParameter("frame does not match the grid");
    auto bytes = detail::header({'Q', 'M', '2', '\0'}, g, time);
    bytes.reserve(bytes.size() + m.size() * 8);
    for (double v : m.flat()) detail::put_f64(bytes, v);
    detail::write_bytes(path, bytes);
}

struct FieldFile {
    qsolve::ComplexField2D field;
    double time = 0.0;
};

struct ModulusFile {
    qsolve::Grid grid;
    qsolve::ModulusFrame modulus;
    double time = 0.0;
};

inline FieldFile read_qf2(const std::string& path) {
    const auto bytes = detail::read_bytes(path);
    const auto h = detail::parse_header(bytes, {'Q', 'F', '2', '\0'}, 16, path);
    FieldFile out{qsolve::ComplexField2D(h.grid), h.time};
    const unsigned char* p = bytes.data() + detail::header_size;
    for (auto& v : out.field.values.flat()) {
        v = {detail::get_f64(p), detail::get_f64(p + 8)};
        p += 16;
    }
    return out;
}

inline ModulusFile read_qm2(const std::string& path) {
    const auto bytes = detail::read_bytes(path);
    const auto h = detail::parse_header(bytes, {'Q', 'M', '2', '\0'}, 8, path);
    ModulusFile out{h.grid, qsolve::ModulusFrame(h.grid.n_x, h.grid.n_y), h.time};
    const unsigned char* p = bytes.data() + detail::header_size;
    for (auto& v : out.modulus.flat()) {
        v = detail::get_f64(p);
        p += 8;
    }
    return out;
}

}  // namespace doughslit::io

#endif  // DOUGHSLIT_IO_BINARY_HPP
