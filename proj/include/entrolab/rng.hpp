#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace entrolab {

/// Deterministic random source. mt19937_64 output is pinned by the standard,
/// and the double conversions below avoid std::*_distribution (whose results
/// are implementation-defined), so streams are reproducible everywhere.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1].
    double uniform_pos() { return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = uniform_pos();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n) { return gen_() % n; }

private:
    std::mt19937_64 gen_;
};

}  // namespace entrolab
