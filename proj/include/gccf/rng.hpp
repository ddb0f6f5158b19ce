#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace gccf {

/// One splitmix64 step.  Used to derive independent substream seeds from a
/// master seed so that e.g. graph topology and function parameters do not
/// share a stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed for substream `stream` of `seed`: the (stream+1)-th splitmix64
/// output.  Stream 0 drives graph topology, stream 1 function parameters.
inline std::uint64_t stream_seed(std::uint64_t seed, unsigned stream) {
    std::uint64_t s = seed;
    std::uint64_t z = 0;
    for (unsigned k = 0; k <= stream; ++k) z = splitmix64(s);
    return z;
}

/// Uniform sampling on top of std::mt19937_64.  The engine's output is
/// pinned by the standard; the std distributions are not, so integer and
/// real draws are implemented here to keep streams identical across
/// compilers and platforms.
class rng {
public:
    explicit rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform integer in [0, bound), rejection-sampled (no modulo bias).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("rng.below: bound must be positive");
        const std::uint64_t min = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            std::uint64_t x = gen_();
            if (x >= min) return x % bound;
        }
    }

    unsigned below_u(unsigned bound) { return static_cast<unsigned>(below(bound)); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace gccf
