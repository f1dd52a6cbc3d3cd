#ifndef DOUGHSLIT_DOUGH_CONFIG_HPP
#define DOUGHSLIT_DOUGH_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "doughslit/error.hpp"
#include "doughslit/io/keyvalue.hpp"

namespace doughslit::dough {

enum class Mode { Interference, NoInterference };

inline std::string to_string(Mode m) { return m == Mode::Interference ? "interference" : "no-interference"; }

inline Mode parse_mode(const std::string& s) {
    if (s == "interference") return Mode::Interference;
    if (s == "no-interference") return Mode::NoInterference;
    throw InvalidParameter("unknown mode '" + s + "' (expected interference or no-interference)");
}

struct DoughConfig {
    double total_mass = 1.0;
    int weight_levels = 4;
    int force_levels = 4;
    int t_interact = 15;
    /// Unset means 30 steps with interference and t_interact without it.
    std::optional<int> total_steps;
    double slit_y_left = -40.0;
    double slit_y_right = 40.0;
    double bin_size = 4.0;
    std::uint64_t trials = 2000;
    std::uint64_t master_seed = 42;
    Mode mode = Mode::Interference;

    int steps() const {
        if (total_steps) return *total_steps;
        return mode == Mode::Interference ? 30 : t_interact;
    }

    void validate() const {
        if (!(total_mass > 0.0)) throw InvalidParameter("total_mass must be positive");
        if (weight_levels < 1) throw InvalidParameter("weight_levels must be at least 1");
        if (force_levels < 1) throw InvalidParameter("force_levels must be at least 1");
        if (t_interact < 1) throw InvalidParameter("t_interact must be at least 1");
        if (steps() < t_interact) throw InvalidParameter("total_steps must not be below t_interact");
        if (!(slit_y_left < slit_y_right)) throw InvalidParameter("slit_y_left must be below slit_y_right");
        if (!(bin_size > 0.0)) throw InvalidParameter("bin_size must be positive");
    }

    bool operator==(const DoughConfig&) const = default;
};

/// Ordered (key, value) pairs with every effective parameter.
inline std::vector<std::pair<std::string, std::string>> entries(const DoughConfig& c) {
    using io::format_double;
    return {
        {"mode", to_string(c.mode)},
        {"total_mass", format_double(c.total_mass)},
        {"weight_levels", std::to_string(c.weight_levels)},
        {"force_levels", std::to_string(c.force_levels)},
        {"t_interact", std::to_string(c.t_interact)},
        {"total_steps", std::to_string(c.steps())},
        {"slit_y_left", format_double(c.slit_y_left)},
        {"slit_y_right", format_double(c.slit_y_right)},
        {"bin_size", format_double(c.bin_size)},
        {"trials", std::to_string(c.trials)},
        {"master_seed", std::to_string(c.master_seed)},
    };
}

inline std::string format_config(const DoughConfig& c, const std::string& prefix = "") {
    std::ostringstream os;
    for (const auto& [k, v] : entries(c)) os << prefix << k << " = " << v << '\n';
    return os.str();
}

/// Applies recognised keys from `kv` on top of `base`; unknown keys are an error.
inline DoughConfig apply(DoughConfig c, const io::KeyValues& kv) {
    for (const auto& [key, value] : kv.values) {
        const std::size_t line = kv.line_of(key);
        auto as_int = [&] { return static_cast<int>(io::parse_int(value, line)); };
        if (key == "mode") c.mode = parse_mode(value);
        else if (key == "total_mass") c.total_mass = io::parse_double(value, line);
        else if (key == "weight_levels") c.weight_levels = as_int();
        else if (key == "force_levels") c.force_levels = as_int();
        else if (key == "t_interact") c.t_interact = as_int();
        else if (key == "total_steps") c.total_steps = as_int();
        else if (key == "slit_y_left") c.slit_y_left = io::parse_double(value, line);
        else if (key == "slit_y_right") c.slit_y_right = io::parse_double(value, line);
        else if (key == "bin_size") c.bin_size = io::parse_double(value, line);
        else if (key == "trials") c.trials = io::parse_uint64(value, line);
        else if (key == "master_seed") c.master_seed = io::parse_uint64(value, line);
        else throw ParseError("unknown dough key '" + key + "'", line);
    }
    return c;
}

}  // namespace doughslit::dough

#endif  // DOUGHSLIT_DOUGH_CONFIG_HPP
