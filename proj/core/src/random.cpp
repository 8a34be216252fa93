#include "mprelay/random.hpp"

#include <cmath>
#include <numbers>

namespace mprelay {
namespace {

// Philox 4x32 multipliers and Weyl key-schedule increments from Salmon,
// Moraes, Dror and Shaw, "Parallel random numbers: as easy as 1, 2, 3".
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

}  // namespace

void RandomSource::refill() {
    // 128-bit counter layout: the low 64 bits count blocks within the
    // stream, the high 64 bits carry the stream id. Every stream therefore
    // walks a disjoint slice of the counter space under the same key.
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32),
    };
    const std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(seed_),
        static_cast<std::uint32_t>(seed_ >> 32),
    };
    buf_ = philox_block(ctr, key);
    ++block_;
    pos_ = 0;
}

double RandomSource::uniform() {
    if (pos_ > 2) refill();
    const std::uint32_t w0 = buf_[pos_];
    const std::uint32_t w1 = buf_[pos_ + 1];
    pos_ += 2;
    // 27 high bits of w0 and 26 of w1 form a 53-bit dyadic rational.
    const std::uint64_t mantissa = (static_cast<std::uint64_t>(w0 >> 5) << 26) | (w1 >> 6);
    return static_cast<double>(mantissa) * 0x1.0p-53;
}

std::complex<double> RandomSource::complex_gaussian() {
    // Polar form: an Exp(1) squared radius and a uniform phase give a
    // circularly symmetric complex Gaussian with E|z|^2 = 1. log1p(-u)
    // keeps the tail finite since u < 1.
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log1p(-u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace mprelay
