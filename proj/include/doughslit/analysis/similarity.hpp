#ifndef DOUGHSLIT_ANALYSIS_SIMILARITY_HPP
#define DOUGHSLIT_ANALYSIS_SIMILARITY_HPP

#include <cmath>
#include <span>

#include "doughslit/error.hpp"

namespace doughslit::analysis {

/**
 * Overlap of two distributions in percent:
 *   100 * sum sqrt(|p_m| |q_m|) / (0.5 * (sum |p_m| + sum |q_m|)).
 * Absolute values are taken first, so small negative noise is tolerated.
 * Bounded by [0, 100] through AM-GM; 100 exactly when |p| == |q|.
 */
inline double similarity(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw InvalidParameter("distributions differ in length");
    double overlap = 0.0, sp = 0.0, sq = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
        const double a = std::abs(p[m]), b = std::abs(q[m]);
        if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidParameter("non-finite distribution value");
        overlap += std::sqrt(a * b);
        sp += a;
        sq += b;
    }
    if (sp + sq == 0.0) throw InvalidParameter("both distributions are all zero");
    return 100.0 * overlap / (0.5 * (sp + sq));
}

}  // namespace doughslit::analysis

#endif  // DOUGHSLIT_ANALYSIS_SIMILARITY_HPP
