#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mprelay/asymptotics.hpp"
#include "mprelay/channel.hpp"
#include "mprelay/relaying.hpp"

namespace mprelay {

// Actual transmit powers at a given antenna count under a scaling rule.
PowerSetting realized_powers(const ScalingCase& sc, std::size_t n_antennas);

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

// Sample average of the instantaneous sum rate over independent channel
// draws. Trial t always uses its own counter stream derived from (scheme,
// n_antennas, t), and the reduction runs in ascending trial order, so the
// result is bitwise identical for any worker count.
Estimate estimate_ergodic_sum_rate(RelayScheme scheme, std::size_t n_antennas,
                                   const ScalingCase& sc, const LargeScaleProfile& profile,
                                   double noise_power, std::size_t trials, std::uint64_t seed,
                                   unsigned workers = 1);

struct SweepSpec {
    std::vector<RelayScheme> schemes;
    ScalingCase scaling;
    LargeScaleProfile profile;
    double noise_power = 1.0;
    std::vector<std::size_t> antenna_counts;  // strictly increasing
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
};

struct SweepRow {
    RelayScheme scheme;
    std::size_t n_antennas;
    Estimate estimate;
    std::optional<double> asymptote;  // absent for the unscaled setting
};

// One estimate per (scheme, antenna count), scheme-major order.
std::vector<SweepRow> sweep(const SweepSpec& spec, unsigned workers = 1);

struct ConvergenceRow {
    RelayScheme scheme;
    std::size_t n_antennas;
    double relative_gap;
};

// Relative distance of each sweep row's mean from its large-N limit.
std::vector<ConvergenceRow> convergence_report(const std::vector<SweepRow>& rows);

}  // namespace mprelay
