#pragma once

#include <cstdint>
#include <random>

namespace larsieve {

// Deterministic across platforms: mt19937_64 output is pinned by the standard,
// and bounded draws avoid std::uniform_int_distribution (implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform in [0, n), n >= 1 (Lemire multiply-shift reduction)
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // uniform in [lo, hi] inclusive
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() { return (next() & 1u) != 0; }

    // uniform double in [0,1)
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    Rng fork() { return Rng(next() ^ 0x9e3779b97f4a7c15ULL); }

private:
    std::mt19937_64 eng_;
};

} // namespace larsieve
