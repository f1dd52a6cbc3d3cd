#ifndef DOUGHSLIT_QSOLVE_SCREEN_HPP
#define DOUGHSLIT_QSOLVE_SCREEN_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "doughslit/error.hpp"
#include "doughslit/qsolve/field.hpp"
#include "doughslit/qsolve/potential.hpp"
#include "doughslit/qsolve/solver.hpp"

namespace doughslit::qsolve {

/// |psi|^2 along one post-barrier x-slice, normalized to unit sum.
struct ScreenProfile {
    std::vector<double> y;
    std::vector<double> probability;
};

inline ScreenProfile screen_profile(const ModulusFrame& frame, const Grid& grid,
                                    const SlitGeometry& slits, double screen_x) {
    if (frame.rows() != grid.n_x || frame.cols() != grid.n_y)
        throw InvalidParameter("frame does not match the grid");
    if (!(screen_x > slits.far_edge()) || !(screen_x < grid.length))
        throw InvalidParameter("screen must lie inside the domain beyond the barrier");
    const std::size_t i = grid.nearest_row(screen_x);
    if (grid.x(i) <= slits.far_edge())
        throw InvalidParameter("screen column falls on the barrier");

    ScreenProfile p;
    p.y.resize(grid.n_y);
    p.probability.resize(grid.n_y);
    double total = 0.0;
    const auto row = frame.row(i);
    for (std::size_t j = 0; j < grid.n_y; ++j) {
        p.y[j] = grid.y(j);
        p.probability[j] = row[j] * row[j];
        total += p.probability[j];
    }
    if (!(total > 0.0)) throw EmptyProfile("empty profile: no probability on the screen column");
    for (auto& v : p.probability) v /= total;
    return p;
}

/// Share of sum |psi|^2 lying strictly beyond the far face of the barrier.
inline double crossed_fraction(const ModulusFrame& frame, const Grid& grid, const SlitGeometry& slits) {
    double total = 0.0, beyond = 0.0;
    for (std::size_t i = 0; i < frame.rows(); ++i) {
        const bool past = grid.x(i) > slits.far_edge();
        for (double m : frame.row(i)) {
            total += m * m;
            if (past) beyond += m * m;
        }
    }
    return total > 0.0 ? beyond / total : 0.0;
}

/// Frame indices (into FieldSeries::frames) of the three profile snapshots.
struct TimePoints {
    std::size_t t1 = 0;
    std::size_t t2 = 0;
    std::size_t t3 = 0;
};

/**
 * T1 is the first frame whose crossed fraction reaches half of the largest
 * crossed fraction seen in the run, T3 the final frame and T2 the frame midway
 * between them. Returns nothing when no probability ever crosses.
 */
inline std::optional<TimePoints> select_time_points(const FieldSeries& series, const SlitGeometry& slits) {
    if (series.frames.empty()) return std::nullopt;
    std::vector<double> crossed;
    crossed.reserve(series.frames.size());
    double peak = 0.0;
    for (const auto& f : series.frames) {
        crossed.push_back(crossed_fraction(f.modulus, series.grid, slits));
        peak = std::max(peak, crossed.back());
    }
    if (!(peak > 0.0)) return std::nullopt;
    TimePoints tp;
    tp.t3 = series.frames.size() - 1;
    for (std::size_t k = 0; k < crossed.size(); ++k) {
        if (crossed[k] >= 0.5 * peak) {
            tp.t1 = k;
            break;
        }
    }
    tp.t2 = tp.t1 + (tp.t3 - tp.t1) / 2;
    return tp;
}

}  // namespace doughslit::qsolve

#endif  // DOUGHSLIT_QSOLVE_SCREEN_HPP
