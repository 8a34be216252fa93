#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace mprelay {

// Counter-based generator (Philox 4x32-10). A source is identified by a
// (seed, stream) pair: two sources built from the same pair replay the
// same sequence, and distinct streams are statistically independent. The
// output is a pure function of (seed, stream, position), which is what
// makes parallel Monte Carlo reproducible: trial t of a sweep owns its
// stream no matter which worker executes it or in which order.
class RandomSource {
public:
    RandomSource(std::uint64_t seed, std::uint64_t stream) noexcept
        : seed_(seed), stream_(stream) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    // Uniform double in [0, 1) with 53-bit resolution.
    double uniform();

    // One circularly symmetric complex Gaussian sample with unit variance,
    // i.e. real and imaginary parts each N(0, 1/2).
    std::complex<double> complex_gaussian();

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    unsigned pos_ = 4;
};

// splitmix64 finalizer. Used to derive stream nonces so unrelated sweep
// rows never share Philox streams.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace mprelay
