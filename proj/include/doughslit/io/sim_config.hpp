#ifndef DOUGHSLIT_IO_SIM_CONFIG_HPP
#define DOUGHSLIT_IO_SIM_CONFIG_HPP

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "doughslit/error.hpp"
#include "doughslit/io/keyvalue.hpp"
#include "doughslit/qsolve.hpp"

namespace doughslit::io {

/// Everything one wave-packet evolution needs, as read from `key = value` files.
struct SimConfig {
    qsolve::Grid grid;
    qsolve::WavePacketParams packet;
    /// When unset, y0 = y0_ratio * x0.
    std::optional<double> y0;
    double y0_ratio = 1.0;
    qsolve::SlitGeometry slits;
    qsolve::SolverConfig solver;
    std::size_t n_steps = 2000;
    std::size_t record_stride = 50;
    double screen_x = 0.9;
    std::string export_preset = "none";

    qsolve::WavePacketParams resolved_packet() const {
        auto p = packet;
        p.y0 = y0 ? *y0 : y0_ratio * packet.x0;
        return p;
    }

    void validate() const {
        grid.validate();
        slits.validate(grid);
        solver.validate();
        if (n_steps < 1) throw InvalidParameter("n_steps must be at least 1");
        if (record_stride < 1) throw InvalidParameter("record_stride must be at least 1");
        if (!(screen_x > slits.far_edge() && screen_x < grid.length))
            throw InvalidParameter("screen_x must lie beyond the barrier inside the domain");
    }
};

inline std::vector<std::pair<std::string, std::string>> entries(const SimConfig& c) {
    const auto p = c.resolved_packet();
    return {
        {"n_x", std::to_string(c.grid.n_x)},
        {"n_y", std::to_string(c.grid.n_y)},
        {"length", format_double(c.grid.length)},
        {"x0", format_double(p.x0)},
        {"y0", format_double(p.y0)},
        {"y0_ratio", format_double(c.y0_ratio)},
        {"sigma_x", format_double(p.sigma_x)},
        {"sigma_y", format_double(p.sigma_y)},
        {"k", format_double(p.k)},
        {"barrier_x", format_double(c.slits.barrier_x)},
        {"barrier_thickness", format_double(c.slits.barrier_thickness)},
        {"slit1_center", format_double(c.slits.slit1_center)},
        {"slit2_center", format_double(c.slits.slit2_center)},
        {"slit_width", format_double(c.slits.slit_width)},
        {"v0", c.slits.v0 ? format_double(*c.slits.v0) : std::string("hard")},
        {"dt", format_double(c.solver.dt)},
        {"tolerance", format_double(c.solver.tolerance)},
        {"max_iterations", std::to_string(c.solver.max_iterations)},
        {"n_steps", std::to_string(c.n_steps)},
        {"record_stride", std::to_string(c.record_stride)},
        {"screen_x", format_double(c.screen_x)},
        {"export_preset", c.export_preset},
    };
}

inline std::string format_config(const SimConfig& c, const std::string& prefix = "") {
    std::ostringstream os;
    for (const auto& [k, v] : entries(c)) os << prefix << k << " = " << v << '\n';
    return os.str();
}

/// True when `key` belongs to SimConfig.
inline bool is_sim_key(const std::string& key) {
    for (const auto& [k, v] : entries(SimConfig{}))
        if (k == key) return true;
    return false;
}

inline SimConfig apply(SimConfig c, const KeyValues& kv) {
    for (const auto& [key, value] : kv.values) {
        const std::size_t line = kv.line_of(key);
        auto num = [&] { return parse_double(value, line); };
        auto count = [&] {
            const auto v = parse_int(value, line);
            if (v < 0) throw ParseError("'" + key + "' must be nonnegative", line);
            return static_cast<std::size_t>(v);
        };
        if (key == "n_x") c.grid.n_x = count();
        else if (key == "n_y") c.grid.n_y = count();
        else if (key == "length") c.grid.length = num();
        else if (key == "x0") c.packet.x0 = num();
        else if (key == "y0") c.y0 = num();
        else if (key == "y0_ratio") c.y0_ratio = num();
        else if (key == "sigma_x") c.packet.sigma_x = num();
        else if (key == "sigma_y") c.packet.sigma_y = num();
        else if (key == "k") c.packet.k = num();
        else if (key == "barrier_x") c.slits.barrier_x = num();
        else if (key == "barrier_thickness") c.slits.barrier_thickness = num();
        else if (key == "slit1_center") c.slits.slit1_center = num();
        else if (key == "slit2_center") c.slits.slit2_center = num();
        else if (key == "slit_width") c.slits.slit_width = num();
        else if (key == "v0") c.slits.v0 = value == "hard" ? std::nullopt : std::optional<double>(num());
        else if (key == "dt") c.solver.dt = num();
        else if (key == "tolerance") c.solver.tolerance = num();
        else if (key == "max_iterations") c.solver.max_iterations = count();
        else if (key == "n_steps") c.n_steps = count();
        else if (key == "record_stride") c.record_stride = count();
        else if (key == "screen_x") c.screen_x = num();
        else if (key == "export_preset") c.export_preset = value;
        else throw ParseError("unknown simulation key '" + key + "'", line);
    }
    return c;
}

}  // namespace doughslit::io

#endif  // DOUGHSLIT_IO_SIM_CONFIG_HPP
