#pragma once

#include <cstddef>
#include <vector>

#include "mprelay/channel.hpp"

namespace mprelay {

enum class RelayScheme { MrcMrt, Zf, NaiveOrthogonal };

// Rate prefactor divisor: MRC/MRT and ZF serve all pairs simultaneously,
// the naive scheme time-shares so each pair pays a factor K.
std::size_t prelog_divisor(RelayScheme scheme, std::size_t n_pairs) noexcept;

// Stable short token used in reports and CSV output.
const char* scheme_name(RelayScheme scheme) noexcept;

struct PowerSetting {
    PowerSetting(double p_t, double p_r);
    double p_t;  // per-source transmit power
    double p_r;  // relay transmit power budget
};

// The four terms of one user's end-to-end SINR: desired signal power,
// inter-pair interference, forwarded relay noise, destination noise.
struct SinrBreakdown {
    double signal;
    double interference;
    double relay_noise;
    double dest_noise;

    double sinr() const noexcept { return signal / (interference + relay_noise + dest_noise); }
};

struct PerUserSinr {
    std::vector<double> values;
};

// Amplification factor that makes W = a G2 G1^H meet the relay power
// budget exactly.
double mrc_gain(const ChannelRealization& ch, const PowerSetting& pw, double n0);

// Same for W = a G2 (G2^H G2)^-1 (G1^H G1)^-1 G1^H. Needs N >= K and
// well-conditioned Grams; otherwise ZfInfeasibleError.
double zf_gain(const ChannelRealization& ch, const PowerSetting& pw, double n0);

// Materialises the N x N relay weight matrix. Verification-only: the SINR
// paths below never form it. The naive scheme has no weight matrix.
CMat relay_matrix(RelayScheme scheme, const ChannelRealization& ch, const PowerSetting& pw,
                  double n0);

// Average power the relay actually radiates under w, namely
// Tr(p_t w G1 G1^H w^H + n0 w w^H); equals p_r up to rounding for both
// schemes' weight matrices.
double power_check(const CMat& w, const CMat& g1, const PowerSetting& pw, double n0);

// User k's SINR terms evaluated literally from an explicit weight matrix.
// The slow, obviously-correct route the fast paths are checked against.
SinrBreakdown sinr_from_decomposition(const CMat& w, const ChannelRealization& ch,
                                      const PowerSetting& pw, double n0, std::size_t k);

// All K end-to-end SINRs under MRC/MRT without forming W; O(N K^2) per
// realization.
PerUserSinr mrc_sinr(const ChannelRealization& ch, const PowerSetting& pw, double n0);

// ZF nulls inter-pair interference by construction, leaving a pure SNR.
PerUserSinr zf_snr(const ChannelRealization& ch, const PowerSetting& pw, double n0);

// Single-pair maximum ratio combining/transmission, each pair active in
// its own 1/(2K) slice of the resources.
PerUserSinr ns_snr(const ChannelRealization& ch, const PowerSetting& pw, double n0);

// Sum over users of log2(1 + sinr) / (2 * prelog_divisor).
double instantaneous_sum_rate(const PerUserSinr& sinr, RelayScheme scheme);

}  // namespace mprelay
