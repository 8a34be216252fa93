#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "mprelay/channel.hpp"
#include "mprelay/relaying.hpp"

namespace mprelay {

// How the transmit powers are tied to the antenna count when N grows.
// Case I:   per-source power shrinks as E_t / N, relay power stays fixed.
// Case II:  per-source power stays fixed, relay power shrinks as E_r / N.
// Case III: both shrink, E_t / N and E_r / N.
// Unscaled: both powers stay fixed regardless of N (no deterministic limit).
struct CaseI {
    double e_t;
    double p_r;
    bool operator==(const CaseI&) const = default;
};

struct CaseII {
    double p_t;
    double e_r;
    bool operator==(const CaseII&) const = default;
};

struct CaseIII {
    double e_t;
    double e_r;
    bool operator==(const CaseIII&) const = default;
};

struct Unscaled {
    double p_t;
    double p_r;
    bool operator==(const Unscaled&) const = default;
};

using ScalingCase = std::variant<CaseI, CaseII, CaseIII, Unscaled>;

// Short identifier used in CSV output and config files.
const char* case_name(const ScalingCase& sc) noexcept;

// Deterministic large-N per-user SINR limits for each relaying scheme.
// Throws std::invalid_argument for Unscaled (the SINR grows without bound)
// and std::out_of_range for a bad user index.
double asym_sinr_mrc(const ScalingCase& sc, const LargeScaleProfile& profile, double n0,
                     std::size_t k);
double asym_sinr_zf(const ScalingCase& sc, const LargeScaleProfile& profile, double n0,
                    std::size_t k);
double asym_sinr_ns(const ScalingCase& sc, const LargeScaleProfile& profile, double n0,
                    std::size_t k);

struct AsymptoticReport {
    std::vector<double> per_user_sinr;
    std::vector<double> per_user_rate;
    double sum_rate = 0.0;
};

// Limits for every user of one scheme, with the half-duplex (and, for the
// naive scheme, orthogonal-access) rate factors applied.
AsymptoticReport asym_report(RelayScheme scheme, const ScalingCase& sc,
                             const LargeScaleProfile& profile, double n0);

// Which scheme wins the large-N per-user SINR comparison.
enum class Dominance { MrcBetter, ZfBetter, Tie };

// Closed-form comparison of the two schemes' limits for user k under
// relay-side power scaling (Case II) or both-sides scaling (Case III).
// Equivalent to comparing asym_sinr_mrc and asym_sinr_zf directly, but
// expressed through the interference-vs-noise trade-off sums.
Dominance dominance_case2(const LargeScaleProfile& profile, std::size_t k);
Dominance dominance_case3(const LargeScaleProfile& profile, double e_t, double n0,
                          std::size_t k);

}  // namespace mprelay
