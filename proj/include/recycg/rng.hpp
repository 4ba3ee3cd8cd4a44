/// @file rng.hpp
/// @brief Deterministic uniform draws shared by RHS generation and the
///        estimator's start vector.
#pragma once

#include <cstdint>
#include <random>

#include "recycg/types.hpp"

namespace recycg {

/// mt19937_64 stream mapped to doubles in [-1, 1).
///
/// The mapping uses the top 53 bits of each draw, so a given (seed, draw
/// index) pair reproduces the same double on every platform, independent of
/// the standard library's distribution implementations.
class UniformPm1 {
public:
    explicit UniformPm1(std::uint64_t seed) : engine_(seed) {}

    double next() {
        const std::uint64_t u = engine_();
        const double u01 = static_cast<double>(u >> 11) * 0x1.0p-53;  // [0, 1)
        return 2.0 * u01 - 1.0;
    }

    Vector draw(std::size_t n) {
        Vector v(n);
        for (double& x : v) x = next();
        return v;
    }

    /// Advances the stream by n draws without producing output.
    void skip(std::size_t n) {
        engine_.discard(n);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace recycg
