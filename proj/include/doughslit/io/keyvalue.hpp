#ifndef DOUGHSLIT_IO_KEYVALUE_HPP
#define DOUGHSLIT_IO_KEYVALUE_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "doughslit/error.hpp"

namespace doughslit::io {

inline std::string trim(std::string_view s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(a, b - a + 1));
}

/// `key = value` settings; keeps the source line of each key for diagnostics.
struct KeyValues {
    std::map<std::string, std::string> values;
    std::map<std::string, std::size_t> lines;

    bool has(const std::string& k) const { return values.count(k) != 0; }

    void set(const std::string& k, const std::string& v, std::size_t line = 0) {
        values[k] = v;
        lines[k] = line;
    }

    /// Applies every entry of `other` on top of this one.
    void merge(const KeyValues& other) {
        for (const auto& [k, v] : other.values) set(k, v, other.lines.at(k));
    }

    std::size_t line_of(const std::string& k) const {
        auto it = lines.find(k);
        return it == lines.end() ? 0 : it->second;
    }
};

inline KeyValues parse_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", n);
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", n);
        kv.set(key, value, n);
    }
    return kv;
}

inline KeyValues read_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file '" + path + "'");
    try {
        return parse_key_values(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

/// Parses `key=value` override strings as given on the command line.
inline KeyValues parse_overrides(const std::vector<std::string>& items) {
    KeyValues kv;
    for (const auto& s : items) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("override '" + s + "' is not key=value");
        kv.set(trim(std::string_view(s).substr(0, eq)), trim(std::string_view(s).substr(eq + 1)));
    }
    return kv;
}

inline double parse_double(const std::string& s, std::size_t line = 0) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end || !std::isfinite(v)) throw ParseError("invalid number '" + s + "'", line);
    return v;
}

inline std::int64_t parse_int(const std::string& s, std::size_t line = 0) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) throw ParseError("invalid integer '" + s + "'", line);
    return v;
}

inline std::uint64_t parse_uint64(const std::string& s, std::size_t line = 0) {
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) throw ParseError("invalid unsigned integer '" + s + "'", line);
    return v;
}

/// Comma-separated doubles, or linspace(a, b, n).
inline std::vector<double> parse_double_list(const std::string& s, std::size_t line = 0) {
    const std::string t = trim(s);
    if (t.rfind("linspace(", 0) == 0 && t.back() == ')') {
        const auto args = parse_double_list(t.substr(9, t.size() - 10), line);
        if (args.size() != 3 || args[2] < 1 || args[2] != std::floor(args[2]))
            throw ParseError("linspace expects (start, stop, count)", line);
        const auto n = static_cast<std::size_t>(args[2]);
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = n == 1 ? args[0] : args[0] + (args[1] - args[0]) * static_cast<double>(i) / static_cast<double>(n - 1);
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line));
    return out;
}

/// Shortest decimal form that reads back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

}  // namespace doughslit::io

#endif  // DOUGHSLIT_IO_KEYVALUE_HPP
