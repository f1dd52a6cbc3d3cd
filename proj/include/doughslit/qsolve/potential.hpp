#ifndef DOUGHSLIT_QSOLVE_POTENTIAL_HPP
#define DOUGHSLIT_QSOLVE_POTENTIAL_HPP

#include <cmath>
#include <cstdint>
#include <optional>

#include "doughslit/array2d.hpp"
#include "doughslit/error.hpp"
#include "doughslit/qsolve/field.hpp"

namespace doughslit::qsolve {

/**
 * Vertical barrier at x = barrier_x pierced by two openings centered at
 * slit1_center and slit2_center. An empty v0 selects a hard barrier: the solver
 * pins psi to zero on every blocked node instead of adding a finite potential.
 */
struct SlitGeometry {
    double barrier_x = 0.75;
    double barrier_thickness = 0.02;
    double slit1_center = 0.42;
    double slit2_center = 0.58;
    double slit_width = 0.04;
    std::optional<double> v0;

    /// Defaults scaled to a domain of side `length`, with the slits straddling `axis_y`.
    static SlitGeometry centered(double length = 1.0, double axis_y = 0.5) {
        SlitGeometry s;
        s.barrier_x = 0.75 * length;
        s.barrier_thickness = 0.02 * length;
        s.slit_width = 0.04 * length;
        s.slit1_center = axis_y - 0.08 * length;
        s.slit2_center = axis_y + 0.08 * length;
        return s;
    }

    double far_edge() const { return barrier_x + 0.5 * barrier_thickness; }
    double axis_y() const { return 0.5 * (slit1_center + slit2_center); }
    bool hard() const { return !v0.has_value(); }

    void validate(const Grid& grid) const {
        const double L = grid.length;
        if (!(barrier_thickness > 0.0) || !(slit_width > 0.0))
            throw InvalidParameter("barrier thickness and slit width must be positive");
        if (!(barrier_x - 0.5 * barrier_thickness > 0.0 && far_edge() < L))
            throw InvalidParameter("barrier must lie strictly inside the domain");
        if (!(std::abs(slit1_center - slit2_center) > slit_width))
            throw InvalidParameter("slit openings overlap");
        for (double c : {slit1_center, slit2_center})
            if (!(c - 0.5 * slit_width > 0.0 && c + 0.5 * slit_width < L))
                throw InvalidParameter("slit opening leaves the domain");
        if (v0 && !std::isfinite(*v0)) throw InvalidParameter("barrier height must be finite");
    }

    friend bool operator==(const SlitGeometry&, const SlitGeometry&) = default;
};

/// Real potential plus a mask of nodes where psi is held at zero.
struct Potential {
    Array2D<double> values;
    Array2D<std::uint8_t> blocked;

    static Potential empty(const Grid& g) {
        return {Array2D<double>(g.n_x, g.n_y, 0.0), Array2D<std::uint8_t>(g.n_x, g.n_y, 0)};
    }

    std::size_t blocked_count() const {
        std::size_t n = 0;
        for (auto b : blocked.flat()) n += b;
        return n;
    }
};

namespace detail {

// Inclusive index range [lo, hi] of nodes whose coordinate lies in [a, b].
// The slack keeps mirror-image geometries producing mirror-image index sets.
inline std::pair<long, long> covered_nodes(double a, double b, double h) {
    constexpr double slack = 1e-9;
    return {static_cast<long>(std::ceil(a / h - slack)), static_cast<long>(std::floor(b / h + slack))};
}

inline bool in_range(long v, std::pair<long, long> r) { return v >= r.first && v <= r.second; }

}  // namespace detail

inline Potential build_potential(const Grid& grid, const SlitGeometry& s) {
    grid.validate();
    s.validate(grid);
    Potential pot = Potential::empty(grid);

    const auto xs = detail::covered_nodes(s.barrier_x - 0.5 * s.barrier_thickness, s.far_edge(), grid.dx());
    const double hw = 0.5 * s.slit_width;
    const auto open1 = detail::covered_nodes(s.slit1_center - hw, s.slit1_center + hw, grid.dy());
    const auto open2 = detail::covered_nodes(s.slit2_center - hw, s.slit2_center + hw, grid.dy());

    for (std::size_t i = 0; i < grid.n_x; ++i) {
        if (!detail::in_range(static_cast<long>(i), xs)) continue;
        for (std::size_t j = 0; j < grid.n_y; ++j) {
            const long jl = static_cast<long>(j);
            if (detail::in_range(jl, open1) || detail::in_range(jl, open2)) continue;
            if (s.hard())
                pot.blocked(i, j) = 1;
            else
                pot.values(i, j) = *s.v0;
        }
    }
    return pot;
}

}  // namespace doughslit::qsolve

#endif  // DOUGHSLIT_QSOLVE_POTENTIAL_HPP
