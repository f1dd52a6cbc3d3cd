#ifndef DOUGHSLIT_QSOLVE_PACKET_HPP
#define DOUGHSLIT_QSOLVE_PACKET_HPP

#include <cmath>
#include <cstddef>

#include "doughslit/error.hpp"
#include "doughslit/qsolve/field.hpp"

namespace doughslit::qsolve {

/**
 * Initial Gaussian packet. The widths enter the exponent as (x - x0)^2 / (2 sigma_x),
 * not 2 sigma_x^2, so sigma carries units of length squared. The |psi|^2 density then
 * has positional variance sigma / 2 along each axis.
 */
struct WavePacketParams {
    double x0 = 0.5;
    double y0 = 0.5;
    double sigma_x = 0.002;
    double sigma_y = 0.005;
    double k = 100.0;

    friend bool operator==(const WavePacketParams&, const WavePacketParams&) = default;
};

/// Unnormalized packet amplitude at one point.
inline complex packet_value(const WavePacketParams& p, double x, double y) {
    const double ex = (x - p.x0) * (x - p.x0) / (2.0 * p.sigma_x);
    const double ey = (y - p.y0) * (y - p.y0) / (2.0 * p.sigma_y);
    return std::exp(-ex - ey) * std::polar(1.0, p.k * (x - p.x0));
}

/// Samples the packet, zeroes the hard walls and normalizes to unit discrete L2 norm.
inline ComplexField2D init_packet(const Grid& grid, const WavePacketParams& p) {
    grid.validate();
    if (!(p.sigma_x > 0.0) || !(p.sigma_y > 0.0))
        throw InvalidParameter("packet widths must be positive");
    if (!(p.x0 > 0.0 && p.x0 < grid.length && p.y0 > 0.0 && p.y0 < grid.length))
        throw InvalidParameter("packet center lies outside the domain");
    if (!std::isfinite(p.k)) throw InvalidParameter("wavenumber must be finite");

    ComplexField2D f(grid);
    std::size_t resolved = 0;
    for (std::size_t i = 0; i < grid.n_x; ++i) {
        for (std::size_t j = 0; j < grid.n_y; ++j) {
            if (grid.is_boundary(i, j)) continue;
            const complex v = packet_value(p, grid.x(i), grid.y(j));
            if (std::abs(v) > 1e-6) ++resolved;
            f.values(i, j) = v;
        }
    }
    if (resolved < 3)
        throw UnderResolution("packet is narrower than the grid can resolve");

    const double n = l2_norm(f);
    for (auto& v : f.values.flat()) v /= n;
    return f;
}

}  // namespace doughslit::qsolve

#endif  // DOUGHSLIT_QSOLVE_PACKET_HPP
