#pragma once

#include <cstdint>

namespace robustgait {

// xoshiro256++ seeded through splitmix64. Fixed algorithm so equal seeds give
// equal draw sequences on every platform. Child streams are derived from the
// root seed and an index, so frame-level parallelism cannot reorder draws.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed);

    std::uint64_t next();

    /// Uniform double in [0, 1).
    double uniform();
    /// Uniform double in (0, 1).
    double uniform_open();
    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n);
    /// Standard normal via Box-Muller (two uniforms per draw).
    double normal();
    /// Poisson draw; inversion for small means, PTRS rejection otherwise.
    std::uint64_t poisson(double mean);

    std::uint64_t seed() const { return seed_; }
    /// Independent stream for e.g. a frame index; deterministic in (seed, index).
    SeededRng child(std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::uint64_t state_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

} // namespace robustgait
