#pragma once

#include <cstdint>
#include <random>

namespace lionman {

/// Seeded generator used everywhere a draw happens. The uniform helpers below
/// avoid std::uniform_real_distribution so draws are identical across
/// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

    /// Independent stream derived from this one (for per-trial seeding).
    Rng fork() { return Rng(engine_()); }

private:
    std::mt19937_64 engine_;
};

}  // namespace lionman
