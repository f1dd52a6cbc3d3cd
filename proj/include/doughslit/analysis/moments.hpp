#ifndef DOUGHSLIT_ANALYSIS_MOMENTS_HPP
#define DOUGHSLIT_ANALYSIS_MOMENTS_HPP

#include <cmath>
#include <optional>
#include <span>

#include "doughslit/error.hpp"

namespace doughslit::analysis {

/// Population moments of a grayscale sample; shape moments are empty when the variance is zero.
struct MomentSignature {
    double mean = 0.0;
    double variance = 0.0;
    std::optional<double> skewness;
    std::optional<double> kurtosis;  ///< m4 / m2^2, not excess

    bool degenerate() const { return !skewness.has_value(); }
};

inline MomentSignature moment_signature(std::span<const double> values) {
    if (values.empty()) throw InvalidParameter("moment signature of an empty sample");
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    MomentSignature s;
    s.mean = mean;
    s.variance = m2;
    if (m2 > 0.0) {
        s.skewness = m3 / std::pow(m2, 1.5);
        s.kurtosis = m4 / (m2 * m2);
    }
    return s;
}

/// Euclidean distance over (mean, variance, skewness, kurtosis), skipping shape terms undefined on either side.
inline double signature_distance(const MomentSignature& a, const MomentSignature& b) {
    double s = (a.mean - b.mean) * (a.mean - b.mean) + (a.variance - b.variance) * (a.variance - b.variance);
    if (a.skewness && b.skewness) s += (*a.skewness - *b.skewness) * (*a.skewness - *b.skewness);
    if (a.kurtosis && b.kurtosis) s += (*a.kurtosis - *b.kurtosis) * (*a.kurtosis - *b.kurtosis);
    return std::sqrt(s);
}

}  // namespace doughslit::analysis

#endif  // DOUGHSLIT_ANALYSIS_MOMENTS_HPP
