#ifndef DOUGHSLIT_ANALYSIS_PEAKS_HPP
#define DOUGHSLIT_ANALYSIS_PEAKS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "doughslit/analysis/histogram.hpp"
#include "doughslit/error.hpp"

namespace doughslit::analysis {

struct Peak {
    std::size_t index = 0;  ///< center of the peak region (bin index)
    double position = 0.0;  ///< index mapped to the axis (bin center for histograms)
    double height = 0.0;
    double prominence = 0.0;
};

/// Centered moving average; windows are clipped at the ends and averaged over what remains.
inline std::vector<double> moving_average(std::span<const double> v, std::size_t window) {
    if (window <= 1) return {v.begin(), v.end()};
    const std::size_t half = window / 2;
    std::vector<double> prefix(v.size() + 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) prefix[i + 1] = prefix[i] + v[i];
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(v.size(), i + half + 1);
        out[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
    }
    return out;
}

namespace detail {

struct Region {
    std::size_t left;
    std::size_t right;
    double height;
};

inline double min_between(std::span<const double> v, std::size_t a, std::size_t b) {
    return *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(a), v.begin() + static_cast<std::ptrdiff_t>(b) + 1);
}

}  // namespace detail

/**
 * Interior local maxima with relative prominence filtering.
 *
 * Candidates are plateaus strictly higher than both neighbours and not touching
 * either end. A region's valleys are the minima between it and its neighbouring
 * regions (or the array ends); prominence is its height minus the higher valley.
 * The least prominent region below min_prominence * max(values) is absorbed
 * into the neighbour across its higher valley: equal heights fuse into one
 * plateau reported at its center, otherwise the lower region is dropped. This
 * repeats until every surviving region clears the threshold.
 */
inline std::vector<Peak> detect_peaks(std::span<const double> values, double min_prominence) {
    if (values.size() < 3) throw InvalidParameter("peak detection needs at least 3 bins");
    if (!(min_prominence >= 0.0 && min_prominence < 1.0))
        throw InvalidParameter("min_prominence must lie in [0, 1)");
    const std::size_t n = values.size();
    const double vmax = *std::max_element(values.begin(), values.end());
    const double threshold = min_prominence * vmax;

    std::vector<detail::Region> regions;
    for (std::size_t i = 1; i + 1 < n;) {
        if (values[i] > values[i - 1]) {
            std::size_t j = i;
            while (j + 1 < n && values[j + 1] == values[i]) ++j;
            if (j + 1 < n && values[j + 1] < values[i]) regions.push_back({i, j, values[i]});
            i = j + 1;
        } else {
            ++i;
        }
    }

    auto valleys = [&](std::size_t k) {
        const auto& r = regions[k];
        const double lv = detail::min_between(values, k > 0 ? regions[k - 1].right : 0, r.left);
        const double rv = detail::min_between(values, r.right, k + 1 < regions.size() ? regions[k + 1].left : n - 1);
        return std::pair{lv, rv};
    };

    while (!regions.empty()) {
        std::size_t worst = 0;
        double worst_prom = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < regions.size(); ++k) {
            const auto [lv, rv] = valleys(k);
            const double prom = regions[k].height - std::max(lv, rv);
            if (prom < worst_prom) {
                worst_prom = prom;
                worst = k;
            }
        }
        if (worst_prom >= threshold) break;

        const auto [lv, rv] = valleys(worst);
        std::optional<std::size_t> neighbour;
        if (rv >= lv && worst + 1 < regions.size())
            neighbour = worst + 1;
        else if (lv >= rv && worst > 0)
            neighbour = worst - 1;
        if (neighbour && regions[*neighbour].height == regions[worst].height) {
            const std::size_t a = std::min(worst, *neighbour), b = std::max(worst, *neighbour);
            regions[a].right = regions[b].right;
            regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(b));
        } else {
            regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(worst));
        }
    }

    std::vector<Peak> peaks;
    peaks.reserve(regions.size());
    for (std::size_t k = 0; k < regions.size(); ++k) {
        const auto [lv, rv] = valleys(k);
        const std::size_t c = regions[k].left + (regions[k].right - regions[k].left) / 2;
        peaks.push_back({c, static_cast<double>(c), regions[k].height, regions[k].height - std::max(lv, rv)});
    }
    return peaks;
}

/// Same as above with positions mapped to histogram bin centers.
inline std::vector<Peak> detect_peaks(const ScreenHistogram& h, double min_prominence) {
    const auto v = h.values();
    auto peaks = detect_peaks(v, min_prominence);
    for (auto& p : peaks) p.position = h.bin_center(p.index);
    return peaks;
}

struct SpacingStats {
    double mean = 0.0;
    double cv = 0.0;  ///< population std of spacings divided by their mean
};

/// Throws UndefinedSpacing for fewer than two peaks.
inline SpacingStats spacing_stats(std::span<const Peak> peaks) {
    if (peaks.size() < 2) throw UndefinedSpacing("spacing needs at least two peaks");
    std::vector<double> d;
    for (std::size_t k = 1; k < peaks.size(); ++k) d.push_back(peaks[k].position - peaks[k - 1].position);
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
    double var = 0.0;
    for (double s : d) var += (s - mean) * (s - mean);
    var /= static_cast<double>(d.size());
    return {mean, mean != 0.0 ? std::sqrt(var) / std::abs(mean) : 0.0};
}

struct FringeMetrics {
    std::size_t peak_count = 0;
    std::optional<SpacingStats> spacing;  ///< empty when fewer than two peaks
    double visibility = 0.0;
    bool fringed = false;
};

/**
 * visibility = (P - V) / (P + V), P the tallest peak and V the lowest valley
 * between consecutive peaks. A lone peak uses the valleys out to either end.
 * `fringed` needs at least five peaks and spacing CV below cv_threshold.
 */
inline FringeMetrics fringe_metrics(std::span<const Peak> peaks, std::span<const double> values,
                                    double cv_threshold = 0.15) {
    FringeMetrics m;
    m.peak_count = peaks.size();
    if (peaks.size() >= 2) m.spacing = spacing_stats(peaks);
    if (!peaks.empty()) {
        double top = 0.0;
        for (const auto& p : peaks) top = std::max(top, p.height);
        double valley = std::numeric_limits<double>::infinity();
        if (peaks.size() == 1) {
            valley = std::min(detail::min_between(values, 0, peaks[0].index),
                              detail::min_between(values, peaks[0].index, values.size() - 1));
        } else {
            for (std::size_t k = 1; k < peaks.size(); ++k)
                valley = std::min(valley, detail::min_between(values, peaks[k - 1].index, peaks[k].index));
        }
        m.visibility = top + valley > 0.0 ? (top - valley) / (top + valley) : 0.0;
    }
    m.fringed = m.peak_count >= 5 && m.spacing && m.spacing->cv < cv_threshold;
    return m;
}

/// Autocorrelation (no mean removal) normalized to the zero-lag value.
inline std::vector<double> autocorrelation(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<double> ac(n, 0.0);
    for (std::size_t lag = 0; lag < n; ++lag)
        for (std::size_t i = 0; i + lag < n; ++i) ac[lag] += v[i] * v[i + lag];
    if (n && ac[0] > 0.0) {
        const double zero_lag = ac[0];
        for (auto& a : ac) a /= zero_lag;
    }
    return ac;
}

/// Height of the tallest local maximum of the autocorrelation at nonzero lag (0 if none).
inline double max_secondary_autocorrelation(std::span<const double> v) {
    const auto ac = autocorrelation(v);
    double best = 0.0;
    for (std::size_t k = 1; k + 1 < ac.size(); ++k)
        if (ac[k] > ac[k - 1] && ac[k] >= ac[k + 1]) best = std::max(best, ac[k]);
    return best;
}

struct FringeOptions {
    std::size_t smooth_window = 15;  ///< moving-average width in bins; 1 disables smoothing
    double min_prominence = 0.1;
    double cv_threshold = 0.15;
};

struct FringeReport {
    std::vector<double> envelope;
    std::vector<Peak> peaks;
    FringeMetrics metrics;
};

/// Peaks and metrics of a histogram's smoothed envelope.
inline FringeReport analyze_fringes(const ScreenHistogram& h, const FringeOptions& opt = {}) {
    FringeReport r;
    const auto raw = h.values();
    r.envelope = moving_average(raw, opt.smooth_window);
    if (r.envelope.size() < 3) return r;
    r.peaks = detect_peaks(r.envelope, opt.min_prominence);
    for (auto& p : r.peaks) p.position = h.bin_center(p.index);
    r.metrics = fringe_metrics(r.peaks, r.envelope, opt.cv_threshold);
    return r;
}

}  // namespace doughslit::analysis

#endif  // DOUGHSLIT_ANALYSIS_PEAKS_HPP
