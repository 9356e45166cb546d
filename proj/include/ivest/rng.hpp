#pragma once

#include <cstdint>
#include <random>

namespace ivest {

// Seeded generator with a pinned algorithm so that replications are
// reproducible across platforms and implementations:
//
//   engine    MT19937-64 (std::mt19937_64, default parameters), seeded with the 64-bit seed
//   uniform   (engine() >> 11) * 2^-53, in [0, 1)
//   gaussian  Box-Muller cosine branch on two consecutive uniforms:
//             sqrt(-2 ln(1 - u1)) * cos(2 pi u2); the sine branch is discarded
//
// std:: distributions are avoided on purpose: their output is
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform01();
    double uniform(double lo, double hi);
    double gaussian();

private:
    std::mt19937_64 engine_;
};

} // namespace ivest
