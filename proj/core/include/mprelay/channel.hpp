#pragma once

#include <cstddef>
#include <vector>

#include "mprelay/numerics.hpp"

namespace mprelay {

// Large-scale fading of the K pairs: eta1[k] is the linear power gain of
// the source k -> relay hop, eta2[k] of the relay -> destination k hop.
class LargeScaleProfile {
public:
    LargeScaleProfile(std::vector<double> eta1, std::vector<double> eta2);

    // All-ones profile (no large-scale disparity between pairs).
    static LargeScaleProfile uniform(std::size_t n_pairs);

    std::size_t n_pairs() const noexcept { return eta1_.size(); }
    const std::vector<double>& eta1() const noexcept { return eta1_; }
    const std::vector<double>& eta2() const noexcept { return eta2_; }

    bool operator==(const LargeScaleProfile&) const = default;

private:
    std::vector<double> eta1_;
    std::vector<double> eta2_;
};

struct SystemConfig {
    SystemConfig(std::size_t n_antennas, std::size_t n_pairs, double noise_power);

    std::size_t n_antennas;  // N, relay antennas
    std::size_t n_pairs;     // K, source-destination pairs
    double noise_power;      // N0, per receive dimension
};

// One small-scale fading draw: g1 holds the N x K source -> relay channels
// column per pair, g2 the N x K relay -> destination channels.
struct ChannelRealization {
    CMat g1;
    CMat g2;

    std::size_t n_antennas() const noexcept { return g1.rows(); }
    std::size_t n_pairs() const noexcept { return g1.cols(); }
};

// Draws G = H D^(1/2): i.i.d. CN(0,1) entries with column k scaled by
// sqrt(eta[k]). The source argument only labels the realization; the two
// hops internally use sub-streams 2s and 2s+1 of its stream s, making them
// independent and the whole draw a pure function of (seed, stream).
ChannelRealization draw_channels(const SystemConfig& config, const LargeScaleProfile& profile,
                                 const RandomSource& rng);

// 10^(dB/10)
double db_to_linear(double db) noexcept;

}  // namespace mprelay
