#ifndef DOUGHSLIT_DOUGH_SIMULATE_HPP
#define DOUGHSLIT_DOUGH_SIMULATE_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "doughslit/analysis/histogram.hpp"
#include "doughslit/dough/config.hpp"
#include "doughslit/dough/model.hpp"
#include "doughslit/dough/rng.hpp"
#include "doughslit/parallel.hpp"

namespace doughslit::dough {

/// Draws W_L, W_R, F_L, F_C, F_R in that order.
inline DoughEvent sample_event(Rng& rng, const DoughConfig& c) {
    DoughEvent e;
    e.w_left = rng.level(c.weight_levels);
    e.w_right = rng.level(c.weight_levels);
    e.f_left = rng.level(c.force_levels);
    e.f_center = rng.level(c.force_levels);
    e.f_right = rng.level(c.force_levels);
    return e;
}

enum class Slit : char { None = '-', Left = 'L', Right = 'R' };

struct ArrivalRecord {
    std::uint64_t trial = 0;
    DoughEvent event;
    double start_y = 0.0;  ///< merge position, or the slit of the earlier branch
    double arrival = 0.0;
    Slit first_slit = Slit::None;
};

struct DoughResult {
    DoughConfig config;
    std::vector<ArrivalRecord> arrivals;  ///< ordered by trial index
    analysis::ScreenHistogram histogram;  ///< all arrivals
    analysis::ScreenHistogram left;       ///< no-interference only
    analysis::ScreenHistogram right;      ///< no-interference only
    std::vector<Trajectory> trajectories; ///< filled when requested

    std::vector<double> arrival_positions() const {
        std::vector<double> y;
        y.reserve(arrivals.size());
        for (const auto& a : arrivals) y.push_back(a.arrival);
        return y;
    }
};

struct RunOptions {
    std::size_t jobs = 1;
    bool keep_trajectories = false;
};

namespace detail {

inline ArrivalRecord interference_trial(const DoughConfig& c, std::uint64_t i, Trajectory* keep) {
    Rng rng(trial_seed(c.master_seed, i));
    const DoughEvent e = sample_event(rng, c);
    const auto [ml, mr] = mass_split(e.w_left, e.w_right, c.total_mass);
    const double yc = merge_position(ml, mr, c.slit_y_left, c.slit_y_right);
    const double a = total_force(e) / c.total_mass;
    ArrivalRecord r{i, e, yc, position_at(yc, a, c.t_interact, c.steps()), Slit::None};
    if (keep) *keep = trajectory(yc, total_force(e), c.total_mass, c.t_interact, c.steps(), e);
    return r;
}

/**
 * Both branches leave their own slit. The one with the smaller acceleration
 * departs first and fixes the detection point; the other is dragged there.
 */
inline ArrivalRecord separated_trial(const DoughConfig& c, std::uint64_t i, Trajectory* keep) {
    Rng rng(trial_seed(c.master_seed, i));
    const DoughEvent e = sample_event(rng, c);
    const auto [ml, mr] = mass_split(e.w_left, e.w_right, c.total_mass);
    const auto [fl, fr] = effective_forces(e);
    const double al = fl / ml, ar = fr / mr;
    bool left_first = al < ar;
    if (al == ar) left_first = rng.coin();
    const double y0 = left_first ? c.slit_y_left : c.slit_y_right;
    const double f = left_first ? fl : fr;
    const double m = left_first ? ml : mr;
    ArrivalRecord r{i, e, y0, position_at(y0, f / m, c.t_interact, c.steps()), left_first ? Slit::Left : Slit::Right};
    if (keep) *keep = trajectory(y0, f, m, c.t_interact, c.steps(), e);
    return r;
}

}  // namespace detail

/// Histograms for the three arrival sets on one shared bin grid anchored at 0.
inline void fill_histograms(DoughResult& r) {
    const auto all = r.arrival_positions();
    r.histogram = analysis::histogram(all, r.config.bin_size, 0.0, 1);
    if (r.config.mode != Mode::NoInterference) return;
    std::vector<double> left, right;
    for (const auto& a : r.arrivals) (a.first_slit == Slit::Left ? left : right).push_back(a.arrival);
    const double b = r.config.bin_size;
    const long first = std::lround(r.histogram.first_edge / b);
    r.left = analysis::histogram_over(left, b, 0.0, first, r.histogram.size());
    r.right = analysis::histogram_over(right, b, 0.0, first, r.histogram.size());
}

inline DoughResult run(const DoughConfig& c, const RunOptions& opt = {}) {
    c.validate();
    DoughResult r;
    r.config = c;
    const std::size_t n = static_cast<std::size_t>(c.trials);
    r.arrivals.resize(n);
    if (opt.keep_trajectories) r.trajectories.resize(n);
    const bool separated = c.mode == Mode::NoInterference;
    parallel_for(n, opt.jobs, [&](std::size_t i) {
        Trajectory* keep = opt.keep_trajectories ? &r.trajectories[i] : nullptr;
        r.arrivals[i] = separated ? detail::separated_trial(c, i, keep) : detail::interference_trial(c, i, keep);
    });
    fill_histograms(r);
    return r;
}

inline DoughResult run_interference(DoughConfig c, const RunOptions& opt = {}) {
    c.mode = Mode::Interference;
    return run(c, opt);
}

inline DoughResult run_no_interference(DoughConfig c, const RunOptions& opt = {}) {
    c.mode = Mode::NoInterference;
    return run(c, opt);
}

/// Runs every configuration in order; trials inside each run share the worker pool.
inline std::vector<DoughResult> run_batch(const std::vector<DoughConfig>& configs, const RunOptions& opt = {}) {
    std::vector<DoughResult> out;
    out.reserve(configs.size());
    for (const auto& c : configs) out.push_back(run(c, opt));
    return out;
}

}  // namespace doughslit::dough

#endif  // DOUGHSLIT_DOUGH_SIMULATE_HPP
