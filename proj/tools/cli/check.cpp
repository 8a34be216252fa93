#include "cli/check.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mprelay/asymptotics.hpp"
#include "mprelay/channel.hpp"
#include "mprelay/random.hpp"
#include "mprelay/relaying.hpp"

namespace mprelay::cli {
namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// Gains spread log-uniformly over [0.1, 10].
LargeScaleProfile random_profile(std::size_t n_pairs, RandomSource& rng) {
    std::vector<double> eta1(n_pairs);
    std::vector<double> eta2(n_pairs);
    for (double& e : eta1) e = std::pow(10.0, 2.0 * rng.uniform() - 1.0);
    for (double& e : eta2) e = std::pow(10.0, 2.0 * rng.uniform() - 1.0);
    return {eta1, eta2};
}

struct SuiteResult {
    bool pass;
    std::string detail;
};

constexpr std::size_t kAntennaGrid[] = {8, 32, 128};
constexpr std::size_t kPairGrid[] = {2, 5};

SuiteResult check_power_constraint(double zf_gain_scale) {
    const PowerSetting pw(2.0, 3.0);
    const double n0 = 1.0;
    RandomSource eta_rng(0xA11CE, 1);
    double worst = 0.0;
    std::string worst_where;
    std::size_t instances = 0;
    std::uint64_t stream = 0;
    for (std::size_t n : kAntennaGrid) {
        for (std::size_t k : kPairGrid) {
            for (int rep = 0; rep < 17; ++rep) {
                const LargeScaleProfile profile = random_profile(k, eta_rng);
                const SystemConfig config(n, k, n0);
                const ChannelRealization ch =
                    draw_channels(config, profile, RandomSource(0xBEEF, stream++));
                for (RelayScheme scheme : {RelayScheme::MrcMrt, RelayScheme::Zf}) {
                    CMat w = relay_matrix(scheme, ch, pw, n0);
                    if (scheme == RelayScheme::Zf && zf_gain_scale != 1.0) {
                        for (std::size_t r = 0; r < w.rows(); ++r) {
                            for (std::size_t c = 0; c < w.cols(); ++c) {
                                w(r, c) *= zf_gain_scale;
                            }
                        }
                    }
                    const double radiated = power_check(w, ch.g1, pw, n0);
                    const double rel = std::abs(radiated - pw.p_r) / pw.p_r;
                    if (rel > worst) {
                        worst = rel;
                        std::ostringstream os;
                        os << "N=" << n << " K=" << k << " " << scheme_name(scheme);
                        worst_where = os.str();
                    }
                }
                ++instances;
            }
        }
    }
    if (worst <= 1e-9) {
        return {true, std::to_string(instances) +
                          " instances, both schemes, max relative error " + sci(worst)};
    }
    return {false, worst_where + " relative error " + sci(worst)};
}

SuiteResult check_zero_interference() {
    const PowerSetting pw(2.0, 3.0);
    const double n0 = 1.0;
    RandomSource eta_rng(0xA11CE, 2);
    double worst = 0.0;
    std::string worst_where;
    std::size_t instances = 0;
    std::uint64_t stream = 0;
    for (std::size_t n : kAntennaGrid) {
        for (std::size_t k : kPairGrid) {
            for (int rep = 0; rep < 17; ++rep) {
                const LargeScaleProfile profile = random_profile(k, eta_rng);
                const SystemConfig config(n, k, n0);
                const ChannelRealization ch =
                    draw_channels(config, profile, RandomSource(0xFEED, stream++));
                const double gain = zf_gain(ch, pw, n0);
                const CMat w = relay_matrix(RelayScheme::Zf, ch, pw, n0);
                const CMat coupling = matmul(matmul(herm(ch.g2), w), ch.g1);
                for (std::size_t row = 0; row < k; ++row) {
                    for (std::size_t col = 0; col < k; ++col) {
                        if (row == col) continue;
                        const double leak = std::abs(coupling(row, col)) / gain;
                        if (leak > worst) {
                            worst = leak;
                            std::ostringstream os;
                            os << "N=" << n << " K=" << k << " pair (" << row << "," << col
                               << ")";
                            worst_where = os.str();
                        }
                    }
                }
                ++instances;
            }
        }
    }
    if (worst < 1e-9) {
        return {true, std::to_string(instances) +
                          " instances, max cross-pair leakage " + sci(worst) +
                          " of the per-pair gain"};
    }
    return {false, worst_where + " leakage " + sci(worst)};
}

SuiteResult check_oracle_equivalence() {
    const PowerSetting pw(2.0, 3.0);
    const double n0 = 1.0;
    RandomSource eta_rng(0xA11CE, 3);
    double worst = 0.0;
    std::string worst_where;
    std::size_t instances = 0;
    std::uint64_t stream = 0;
    for (std::size_t n : kAntennaGrid) {
        for (std::size_t k : {std::size_t{1}, std::size_t{2}, std::size_t{5}}) {
            for (int rep = 0; rep < 12; ++rep) {
                const LargeScaleProfile profile = random_profile(k, eta_rng);
                const SystemConfig config(n, k, n0);
                const ChannelRealization ch =
                    draw_channels(config, profile, RandomSource(0xCAFE, stream++));
                for (RelayScheme scheme : {RelayScheme::MrcMrt, RelayScheme::Zf}) {
                    const PerUserSinr fast = scheme == RelayScheme::MrcMrt
                                                 ? mrc_sinr(ch, pw, n0)
                                                 : zf_snr(ch, pw, n0);
                    const CMat w = relay_matrix(scheme, ch, pw, n0);
                    for (std::size_t u = 0; u < k; ++u) {
                        const double slow =
                            sinr_from_decomposition(w, ch, pw, n0, u).sinr();
                        const double rel = std::abs(fast.values[u] - slow) / slow;
                        if (rel > worst) {
                            worst = rel;
                            std::ostringstream os;
                            os << "N=" << n << " K=" << k << " " << scheme_name(scheme)
                               << " user " << u;
                            worst_where = os.str();
                        }
                    }
                }
                ++instances;
            }
        }
    }
    if (worst <= 1e-10) {
        return {true, std::to_string(instances) +
                          " instances, fast paths vs explicit-matrix evaluation, max "
                          "relative error " +
                          sci(worst)};
    }
    return {false, worst_where + " relative error " + sci(worst)};
}

SuiteResult check_remark_consistency() {
    RandomSource rng(0xD00D, 4);
    std::size_t disagreements = 0;
    std::size_t exact_misses = 0;
    std::string witness;
    const double n0 = 1.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t k = 2 + static_cast<std::size_t>(rng.uniform() * 7.0);
        const LargeScaleProfile profile = random_profile(k, rng);
        const double e_t = 0.5 + 19.5 * rng.uniform();
        const ScalingCase c1 = CaseI{e_t, 3.0};
        const ScalingCase c2 = CaseII{1.3, 7.0};
        const ScalingCase c3 = CaseIII{e_t, 5.0};
        for (std::size_t u = 0; u < k; ++u) {
            // Under source-side scaling the two limits coincide identically.
            if (asym_sinr_mrc(c1, profile, n0, u) != asym_sinr_zf(c1, profile, n0, u)) {
                ++exact_misses;
            }
            const auto agree = [&](Dominance d, double mrc, double zf) {
                const double rel = (mrc - zf) / std::max(mrc, zf);
                if (d == Dominance::MrcBetter) return rel > 0.0;
                if (d == Dominance::ZfBetter) return rel < 0.0;
                return std::abs(rel) <= 1e-9;
            };
            if (!agree(dominance_case2(profile, u), asym_sinr_mrc(c2, profile, n0, u),
                       asym_sinr_zf(c2, profile, n0, u)) ||
                !agree(dominance_case3(profile, e_t, n0, u),
                       asym_sinr_mrc(c3, profile, n0, u),
                       asym_sinr_zf(c3, profile, n0, u))) {
                ++disagreements;
                if (witness.empty()) {
                    std::ostringstream os;
                    os << "profile " << rep << " user " << u;
                    witness = os.str();
                }
            }
        }
    }
    if (disagreements == 0 && exact_misses == 0) {
        return {true,
                "1000 random profiles: source-scaled limits identical, dominance "
                "verdicts match the direct limit comparison"};
    }
    std::ostringstream os;
    os << disagreements << " dominance disagreements, " << exact_misses
       << " source-scaled mismatches";
    if (!witness.empty()) os << " (first at " << witness << ")";
    return {false, os.str()};
}

SuiteResult check_lln_scaling() {
    // Cross-pair alignment |g2_0^H g2_1| / N should shrink like 1/sqrt(N):
    // each 4x antenna step should divide it by about 2.
    const std::size_t counts[] = {64, 256, 1024};
    double means[3] = {};
    for (int idx = 0; idx < 3; ++idx) {
        const SystemConfig config(counts[idx], 2, 1.0);
        const LargeScaleProfile profile = LargeScaleProfile::uniform(2);
        double acc = 0.0;
        const int trials = 200;
        for (int t = 0; t < trials; ++t) {
            const ChannelRealization ch =
                draw_channels(config, profile, RandomSource(0x50F7, static_cast<std::uint64_t>(idx) * 1000 + t));
            cplx dot = 0.0;
            for (std::size_t i = 0; i < ch.n_antennas(); ++i) {
                dot += std::conj(ch.g2(i, 0)) * ch.g2(i, 1);
            }
            acc += std::abs(dot) / static_cast<double>(counts[idx]);
        }
        means[idx] = acc / trials;
    }
    const double f1 = means[0] / means[1];
    const double f2 = means[1] / means[2];
    const bool pass = f1 >= 1.67 && f1 <= 2.5 && f2 >= 1.67 && f2 <= 2.5;
    std::ostringstream os;
    os << "cross-pair alignment per antenna fell by " << sci(f1) << "x (64->256) and "
       << sci(f2) << "x (256->1024); expected ~2x per 4x antennas";
    return {pass, os.str()};
}

}  // namespace

int run_check(const CheckOptions& opts, std::ostream& out) {
    out << "INFO fig3: the commonly quoted limiting sum rate 4.73 for this setup does not "
           "satisfy the relay-scaled closed form, which gives 3.96241; convergence is "
           "judged against the closed form.\n";
    struct Named {
        const char* name;
        SuiteResult result;
    };
    const Named suites[] = {
        {"power-constraint", check_power_constraint(opts.zf_gain_scale)},
        {"zf-zero-interference", check_zero_interference()},
        {"oracle-equivalence", check_oracle_equivalence()},
        {"remark-consistency", check_remark_consistency()},
        {"lln-scaling", check_lln_scaling()},
    };
    int failures = 0;
    for (const Named& s : suites) {
        out << (s.result.pass ? "PASS " : "FAIL ") << s.name << " (" << s.result.detail
            << ")\n";
        if (!s.result.pass) ++failures;
    }
    if (failures == 0) {
        out << "all " << std::size(suites) << " checks passed\n";
        return 0;
    }
    out << failures << " of " << std::size(suites) << " checks failed\n";
    return 1;
}

}  // namespace mprelay::cli
