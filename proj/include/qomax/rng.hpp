#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace qomax {

namespace detail {

// SplitMix64 output function (Steele, Lea, Flood).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based generator: a Weyl sequence pushed through the SplitMix64
// finalizer. No warm-up, identical output on every platform.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return detail::mix64(state_);
    }

private:
    std::uint64_t state_;
};

// Derives an independent substream seed from a parent seed and up to three
// stream coordinates (e.g. algorithm, horizon, trajectory index).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                    std::uint64_t c = 0) {
    std::uint64_t s = detail::mix64(seed ^ 0x6a09e667f3bcc909ULL);
    s = detail::mix64(s ^ detail::mix64(a + 0xbb67ae8584caa73bULL));
    s = detail::mix64(s ^ detail::mix64(b + 0x3c6ef372fe94f82bULL));
    s = detail::mix64(s ^ detail::mix64(c + 0xa54ff53a5f1d36f1ULL));
    return s;
}

// Uniform draw in the open interval (0,1); both endpoints are excluded so
// inverse transforms like (C/u)^(1/lambda) stay finite.
inline double uniform_open01(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_normal(Rng& rng) {
    // Box-Muller, second variate discarded: keeps the sampler stateless.
    const double u1 = uniform_open01(rng);
    const double u2 = uniform_open01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

// Marsaglia-Tsang squeeze method; shape < 1 handled by the boost trick.
inline double standard_gamma(double shape, Rng& rng) {
    if (shape < 1.0) {
        const double u = uniform_open01(rng);
        return standard_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open01(rng);
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace qomax
