#include "mprelay/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mprelay {
namespace {

void check_etas(const std::vector<double>& eta) {
    for (double e : eta) {
        if (!std::isfinite(e) || e <= 0.0) {
            throw std::invalid_argument("LargeScaleProfile: every eta must be positive and finite");
        }
    }
}

}  // namespace

LargeScaleProfile::LargeScaleProfile(std::vector<double> eta1, std::vector<double> eta2)
    : eta1_(std::move(eta1)), eta2_(std::move(eta2)) {
    if (eta1_.empty() || eta1_.size() != eta2_.size()) {
        throw std::invalid_argument(
            "LargeScaleProfile: eta lists must be non-empty and of equal length");
    }
    check_etas(eta1_);
    check_etas(eta2_);
}

LargeScaleProfile LargeScaleProfile::uniform(std::size_t n_pairs) {
    return {std::vector<double>(n_pairs, 1.0), std::vector<double>(n_pairs, 1.0)};
}

SystemConfig::SystemConfig(std::size_t n_antennas_, std::size_t n_pairs_, double noise_power_)
    : n_antennas(n_antennas_), n_pairs(n_pairs_), noise_power(noise_power_) {
    if (n_antennas == 0 || n_pairs == 0) {
        throw std::invalid_argument("SystemConfig: antenna and pair counts must be positive");
    }
    if (!std::isfinite(noise_power) || noise_power < 0.0) {
        throw std::invalid_argument("SystemConfig: noise power must be finite and non-negative");
    }
}

ChannelRealization draw_channels(const SystemConfig& config, const LargeScaleProfile& profile,
                                 const RandomSource& rng) {
    if (profile.n_pairs() != config.n_pairs) {
        throw std::invalid_argument("draw_channels: profile size does not match the config");
    }
    const std::uint64_t s = rng.stream();
    CMat g1 = cgauss_matrix(config.n_antennas, config.n_pairs, RandomSource(rng.seed(), 2 * s));
    CMat g2 = cgauss_matrix(config.n_antennas, config.n_pairs, RandomSource(rng.seed(), 2 * s + 1));

    const auto scale_columns = [](CMat& g, const std::vector<double>& eta) {
        std::vector<double> root(eta.size());
        for (std::size_t k = 0; k < eta.size(); ++k) root[k] = std::sqrt(eta[k]);
        for (std::size_t i = 0; i < g.rows(); ++i) {
            for (std::size_t k = 0; k < g.cols(); ++k) g(i, k) *= root[k];
        }
    };
    scale_columns(g1, profile.eta1());
    scale_columns(g2, profile.eta2());
    return {std::move(g1), std::move(g2)};
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

}  // namespace mprelay
