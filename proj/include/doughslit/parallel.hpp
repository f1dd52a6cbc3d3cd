#ifndef DOUGHSLIT_PARALLEL_HPP
#define DOUGHSLIT_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace doughslit {

inline std::size_t default_jobs() { return std::max<std::size_t>(1, std::thread::hardware_concurrency()); }

/**
 * Runs fn(i) for i in [0, n) on up to `jobs` threads using contiguous chunks.
 * Callers write results into slot i, so output never depends on scheduling.
 * The first exception thrown by any worker is rethrown here.
 */
template <class Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    const std::size_t chunk = (n + jobs - 1) / jobs;
    for (std::size_t w = 0; w < jobs; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    workers.clear();
    if (error) std::rethrow_exception(error);
}

}  // namespace doughslit

#endif  // DOUGHSLIT_PARALLEL_HPP
