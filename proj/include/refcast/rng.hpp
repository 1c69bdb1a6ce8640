#pragma once

#include <cstdint>

namespace refcast {

// Counter-based deterministic generator: output i equals the i-th value of
// the sequential SplitMix64 reference implementation (Vigna,
// https://prng.di.unimi.it/splitmix64.c), so any index can be computed
// directly and in parallel. Reference test vectors live in docs/prng.md
// and tests/test_synth.cpp.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t at(std::uint64_t i) const;

    // Uniform on the open interval (0, 1): (bits >> 11 + 0.5) * 2^-53.
    double uniform01_at(std::uint64_t i) const;

private:
    std::uint64_t seed_;
};

// Standard normal quantile, Wichura's algorithm AS 241 (PPND16),
// |error| < 1e-15 over (0, 1).
double normal_quantile(double p);

} // namespace refcast
