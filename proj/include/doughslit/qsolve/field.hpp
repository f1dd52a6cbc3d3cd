#ifndef DOUGHSLIT_QSOLVE_FIELD_HPP
#define DOUGHSLIT_QSOLVE_FIELD_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "doughslit/array2d.hpp"
#include "doughslit/error.hpp"

namespace doughslit::qsolve {

using complex = std::complex<double>;

/// Uniform grid over the square [0, length] x [0, length]; nodes include both edges.
struct Grid {
    std::size_t n_x = 256;
    std::size_t n_y = 256;
    double length = 1.0;

    double dx() const { return length / static_cast<double>(n_x - 1); }
    double dy() const { return length / static_cast<double>(n_y - 1); }
    double x(std::size_t i) const { return static_cast<double>(i) * dx(); }
    double y(std::size_t j) const { return static_cast<double>(j) * dy(); }

    bool is_boundary(std::size_t i, std::size_t j) const {
        return i == 0 || j == 0 || i + 1 == n_x || j + 1 == n_y;
    }

    /// Nearest row to a given x coordinate (clamped to the grid).
    std::size_t nearest_row(double xv) const {
        const double r = std::round(xv / dx());
        if (r <= 0.0) return 0;
        return std::min(static_cast<std::size_t>(r), n_x - 1);
    }

    void validate() const {
        if (n_x < 8 || n_y < 8)
            throw InvalidParameter("grid needs at least 8 points per axis");
        if (!(length > 0.0) || !std::isfinite(length))
            throw InvalidParameter("grid length must be positive");
    }

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Complex wave function sampled on a grid.
struct ComplexField2D {
    Grid grid;
    Array2D<complex> values;

    ComplexField2D() = default;
    explicit ComplexField2D(const Grid& g) : grid(g), values(g.n_x, g.n_y) {}
    ComplexField2D(const Grid& g, Array2D<complex> v) : grid(g), values(std::move(v)) {}
};

using ModulusFrame = Array2D<double>;

/// sqrt(sum |psi|^2 dx dy); the discrete L2 norm used throughout.
inline double l2_norm(const ComplexField2D& f) {
    double s = 0.0;
    for (const auto& v : f.values.flat()) s += std::norm(v);
    return std::sqrt(s * f.grid.dx() * f.grid.dy());
}

inline ModulusFrame modulus(const ComplexField2D& f) {
    ModulusFrame out(f.values.rows(), f.values.cols());
    auto src = f.values.flat();
    auto dst = out.flat();
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = std::abs(src[k]);
    return out;
}

/// Largest |psi| over the hard-wall boundary nodes.
inline double boundary_max(const ComplexField2D& f) {
    const auto& g = f.grid;
    double m = 0.0;
    for (std::size_t i = 0; i < g.n_x; ++i)
        for (std::size_t j = 0; j < g.n_y; ++j)
            if (g.is_boundary(i, j)) m = std::max(m, std::abs(f.values(i, j)));
    return m;
}

/// Largest |psi| on the ring of nodes one step inside the boundary.
inline double inner_ring_max(const ComplexField2D& f) {
    const auto& g = f.grid;
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < g.n_x; ++i)
        for (std::size_t j = 1; j + 1 < g.n_y; ++j)
            if (i == 1 || j == 1 || i + 2 == g.n_x || j + 2 == g.n_y)
                m = std::max(m, std::abs(f.values(i, j)));
    return m;
}

}  // namespace doughslit::qsolve

#endif  // DOUGHSLIT_QSOLVE_FIELD_HPP
