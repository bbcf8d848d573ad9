#ifndef WDVV_SAMPLING_HPP
#define WDVV_SAMPLING_HPP

// Deterministic complex point sampling. Reports must be bit-reproducible for a
// given (seed, samples) pair across platforms, so the uniform draw is built
// directly from mt19937_64 output words instead of std::uniform_real_distribution
// (whose algorithm is implementation-defined). Per-sample substreams are keyed
// through a splitmix64 finalizer so inserting or removing a sample never
// perturbs the others.

#include <cstdint>
#include <functional>

#include "core.hpp"

#include <cmath>
#include <random>

namespace wdvv {

/// Decorrelated per-sample seed: splitmix64 finalizer applied to
/// seed + (index+1) * golden-gamma.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class sampler {
public:
    explicit sampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform in [0, 1): top 53 bits of one engine word.
    double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    /// Modulus uniform in [0.5, 2], phase uniform in [0, 2*pi).
    cplx draw() {
        double mod = 0.5 + 1.5 * uniform01();
        double phase = 2.0 * pi * uniform01();
        return cplx(mod * std::cos(phase), mod * std::sin(phase));
    }

    cvec draw_vec(std::size_t n) {
        cvec v(n);
        for (auto& z : v) z = draw();
        return v;
    }

private:
    static constexpr double pi = 3.14159265358979323846;
    std::mt19937_64 rng_;
};

/// Draw an n-vector satisfying `admissible`, retrying with fresh draws from the
/// same substream. Gives up after max_attempts full vectors.
inline cvec draw_admissible(sampler& s, std::size_t n,
                            const std::function<bool(const cvec&)>& admissible,
                            int max_attempts = 100) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        cvec v = s.draw_vec(n);
        if (admissible(v)) return v;
    }
    throw singular_point("sampling: no admissible point found within attempt budget");
}

} // namespace wdvv

#endif
