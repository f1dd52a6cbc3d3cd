#ifndef DOUGHSLIT_DOUGH_RNG_HPP
#define DOUGHSLIT_DOUGH_RNG_HPP

#include <cstdint>

namespace doughslit::dough {

__extension__ using uint128 = unsigned __int128;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of trial `index` under `master`; independent of execution order.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = a ^ (index * 0xD1B54A32D192ED03ULL);
    splitmix64(t);
    return splitmix64(t);
}

/**
 * xoshiro256** with splitmix64 seeding. Bounded integers use Lemire's
 * multiply-and-reject, so streams are identical on every platform
 * (std:: distributions are implementation-defined).
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        for (auto& w : s_) w = splitmix64(seed);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        uint128 m = static_cast<uint128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<uint128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform on {1, ..., levels}.
    int level(int levels) { return 1 + static_cast<int>(below(static_cast<std::uint64_t>(levels))); }

    bool coin() { return (next() >> 63) != 0; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace doughslit::dough

#endif  // DOUGHSLIT_DOUGH_RNG_HPP
