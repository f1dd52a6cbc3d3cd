#ifndef DOUGHSLIT_ANALYSIS_HISTOGRAM_HPP
#define DOUGHSLIT_ANALYSIS_HISTOGRAM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "doughslit/error.hpp"

namespace doughslit::analysis {

/// Uniform-width histogram; bin k covers [first_edge + k*bin_size, first_edge + (k+1)*bin_size).
struct ScreenHistogram {
    double first_edge = 0.0;
    double bin_size = 1.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    std::size_t size() const noexcept { return counts.size(); }
    double bin_left(std::size_t k) const { return first_edge + static_cast<double>(k) * bin_size; }
    double bin_right(std::size_t k) const { return bin_left(k + 1); }
    double bin_center(std::size_t k) const { return bin_left(k) + 0.5 * bin_size; }

    std::vector<double> values() const { return {counts.begin(), counts.end()}; }
};

namespace detail {
inline long bin_index(double x, double bin_size, double anchor) {
    return static_cast<long>(std::floor((x - anchor) / bin_size));
}
}  // namespace detail

/**
 * Bins `n_bins` consecutive slots starting at bin index `first_index` relative
 * to `anchor`. Positions outside the covered span are rejected so that the
 * counts always add up to the input length.
 */
inline ScreenHistogram histogram_over(std::span<const double> positions, double bin_size, double anchor,
                                      long first_index, std::size_t n_bins) {
    if (!(bin_size > 0.0) || !std::isfinite(bin_size)) throw InvalidParameter("bin size must be positive");
    ScreenHistogram h;
    h.bin_size = bin_size;
    h.first_edge = anchor + static_cast<double>(first_index) * bin_size;
    h.counts.assign(n_bins, 0);
    for (double x : positions) {
        if (!std::isfinite(x)) throw InvalidParameter("non-finite position");
        const long k = detail::bin_index(x, bin_size, anchor) - first_index;
        if (k < 0 || static_cast<std::size_t>(k) >= n_bins)
            throw InvalidParameter("position outside the histogram range");
        ++h.counts[static_cast<std::size_t>(k)];
        ++h.total;
    }
    return h;
}

/// Smallest range of bins (plus `pad_bins` empty bins per side) covering every position.
inline ScreenHistogram histogram(std::span<const double> positions, double bin_size, double anchor = 0.0,
                                 std::size_t pad_bins = 0) {
    if (!(bin_size > 0.0) || !std::isfinite(bin_size)) throw InvalidParameter("bin size must be positive");
    if (positions.empty()) {
        ScreenHistogram h;
        h.bin_size = bin_size;
        h.first_edge = anchor;
        return h;
    }
    const auto [mn, mx] = std::minmax_element(positions.begin(), positions.end());
    const long pad = static_cast<long>(pad_bins);
    const long lo = detail::bin_index(*mn, bin_size, anchor) - pad;
    const long hi = detail::bin_index(*mx, bin_size, anchor) + pad;
    return histogram_over(positions, bin_size, anchor, lo, static_cast<std::size_t>(hi - lo + 1));
}

}  // namespace doughslit::analysis

#endif  // DOUGHSLIT_ANALYSIS_HISTOGRAM_HPP
