#pragma once

#include <cstdint>

namespace mscx {

/* Deterministic counter-based randomness. Every draw is a pure function of
 * (seed, site, counter) built on the splitmix64 finalizer, so results do not
 * depend on evaluation order, threading, or platform. */

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_site(std::uint64_t seed, std::uint64_t site) {
    return mix64(seed ^ mix64(site + 0x51700e8587f0f34dull));
}

/* 53-bit mantissa; uniform in [0,1). */
inline double to_u01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/* One independent draw per (seed, site); used where each lattice site or
 * lower star needs its own stream head. */
inline double site_uniform(std::uint64_t seed, std::uint64_t site) {
    return to_u01(hash_site(seed, site));
}

/* Sequential stream for consumers that need many draws. */
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t site = 0)
        : state_(hash_site(seed, site)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }
    double next_u01() { return to_u01(next_u64()); }
    double next_range(double lo, double hi) {
        return lo + (hi - lo) * next_u01();
    }
    /* uniform integer in [0, n); n > 0 */
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

} // namespace mscx
