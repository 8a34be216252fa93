#include "mprelay/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace mprelay {
namespace {

void check_user_index(const LargeScaleProfile& profile, std::size_t k) {
    if (k >= profile.n_pairs()) {
        throw std::out_of_range("user index exceeds the number of pairs");
    }
}

[[noreturn]] void throw_unscaled() {
    throw std::invalid_argument(
        "asymptotic SINR: the unscaled power setting has no deterministic large-N limit");
}

// Sum over all pairs of eta1_i^2 * eta2_i.
double sum_e1sq_e2(const LargeScaleProfile& p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.n_pairs(); ++i) acc += p.eta1()[i] * p.eta1()[i] * p.eta2()[i];
    return acc;
}

// Sum over all pairs of eta1_i * eta2_i.
double sum_e1_e2(const LargeScaleProfile& p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.n_pairs(); ++i) acc += p.eta1()[i] * p.eta2()[i];
    return acc;
}

// Sum over all pairs of 1 / eta2_i.
double sum_inv_e2(const LargeScaleProfile& p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.n_pairs(); ++i) acc += 1.0 / p.eta2()[i];
    return acc;
}

// Sum over all pairs of 1 / (eta1_i * eta2_i).
double sum_inv_e1_e2(const LargeScaleProfile& p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.n_pairs(); ++i) acc += 1.0 / (p.eta1()[i] * p.eta2()[i]);
    return acc;
}

Dominance verdict(double lhs, double rhs) {
    const double tol = 1e-12 * std::max(std::abs(lhs), std::abs(rhs));
    if (std::abs(lhs - rhs) <= tol) return Dominance::Tie;
    return lhs < rhs ? Dominance::MrcBetter : Dominance::ZfBetter;
}

}  // namespace

const char* case_name(const ScalingCase& sc) noexcept {
    if (std::get_if<CaseI>(&sc)) return "case1";
    if (std::get_if<CaseII>(&sc)) return "case2";
    if (std::get_if<CaseIII>(&sc)) return "case3";
    return "unscaled";
}

double asym_sinr_mrc(const ScalingCase& sc, const LargeScaleProfile& profile, double n0,
                     std::size_t k) {
    check_user_index(profile, k);
    const double e1k = profile.eta1()[k];
    const double e2k = profile.eta2()[k];
    if (const CaseI* c = std::get_if<CaseI>(&sc)) {
        return c->e_t * e1k / n0;
    }
    if (const CaseII* c = std::get_if<CaseII>(&sc)) {
        return c->e_r * e1k * e1k * e2k * e2k / (sum_e1sq_e2(profile) * n0);
    }
    if (const CaseIII* c = std::get_if<CaseIII>(&sc)) {
        const double first_hop = c->e_t * e1k / n0;
        const double relay_penalty =
            (c->e_t * sum_e1sq_e2(profile) + n0 * sum_e1_e2(profile)) /
            (c->e_r * e1k * e2k * e2k);
        return first_hop / (1.0 + relay_penalty);
    }
    throw_unscaled();
}

double asym_sinr_zf(const ScalingCase& sc, const LargeScaleProfile& profile, double n0,
                    std::size_t k) {
    check_user_index(profile, k);
    const double e1k = profile.eta1()[k];
    if (const CaseI* c = std::get_if<CaseI>(&sc)) {
        return c->e_t * e1k / n0;
    }
    if (const CaseII* c = std::get_if<CaseII>(&sc)) {
        return c->e_r / (sum_inv_e2(profile) * n0);
    }
    if (const CaseIII* c = std::get_if<CaseIII>(&sc)) {
        const double first_hop = c->e_t * e1k / n0;
        const double relay_penalty =
            (c->e_t * sum_inv_e2(profile) + n0 * sum_inv_e1_e2(profile)) * e1k / c->e_r;
        return first_hop / (1.0 + relay_penalty);
    }
    throw_unscaled();
}

double asym_sinr_ns(const ScalingCase& sc, const LargeScaleProfile& profile, double n0,
                    std::size_t k) {
    check_user_index(profile, k);
    const double e1k = profile.eta1()[k];
    const double e2k = profile.eta2()[k];
    if (const CaseI* c = std::get_if<CaseI>(&sc)) {
        return c->e_t * e1k / n0;
    }
    if (const CaseII* c = std::get_if<CaseII>(&sc)) {
        return c->e_r * e2k / n0;
    }
    if (const CaseIII* c = std::get_if<CaseIII>(&sc)) {
        // Both hop SNRs stay finite here, so the two-hop combination keeps
        // its +1 term instead of degenerating to a single hop.
        const double snr1 = c->e_t * e1k / n0;
        const double snr2 = c->e_r * e2k / n0;
        return snr1 * snr2 / (snr1 + snr2 + 1.0);
    }
    throw_unscaled();
}

AsymptoticReport asym_report(RelayScheme scheme, const ScalingCase& sc,
                             const LargeScaleProfile& profile, double n0) {
    const std::size_t pairs = profile.n_pairs();
    const double divisor = 2.0 * static_cast<double>(prelog_divisor(scheme, pairs));

    AsymptoticReport report;
    report.per_user_sinr.resize(pairs);
    report.per_user_rate.resize(pairs);
    for (std::size_t k = 0; k < pairs; ++k) {
        double sinr = 0.0;
        switch (scheme) {
            case RelayScheme::MrcMrt: sinr = asym_sinr_mrc(sc, profile, n0, k); break;
            case RelayScheme::Zf: sinr = asym_sinr_zf(sc, profile, n0, k); break;
            case RelayScheme::NaiveOrthogonal: sinr = asym_sinr_ns(sc, profile, n0, k); break;
        }
        report.per_user_sinr[k] = sinr;
        report.per_user_rate[k] = std::log2(1.0 + sinr) / divisor;
        report.sum_rate += report.per_user_rate[k];
    }
    return report;
}

Dominance dominance_case2(const LargeScaleProfile& profile, std::size_t k) {
    check_user_index(profile, k);
    const double e1k = profile.eta1()[k];
    const double e2k = profile.eta2()[k];
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < profile.n_pairs(); ++i) {
        if (i == k) continue;
        const double e1i = profile.eta1()[i];
        const double e2i = profile.eta2()[i];
        lhs += e1i * e1i * e2i;
        rhs += 1.0 / e2i;
    }
    lhs /= e1k * e1k * e2k * e2k;
    return verdict(lhs, rhs);
}

Dominance dominance_case3(const LargeScaleProfile& profile, double e_t, double n0,
                          std::size_t k) {
    check_user_index(profile, k);
    const double e1k = profile.eta1()[k];
    const double e2k = profile.eta2()[k];
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < profile.n_pairs(); ++i) {
        if (i == k) continue;
        const double e1i = profile.eta1()[i];
        const double e2i = profile.eta2()[i];
        const double boost = 1.0 + e_t * e1i / n0;
        lhs += e1i * e2i * boost;
        rhs += boost / (e1i * e2i);
    }
    lhs /= e1k * e1k * e2k * e2k;
    return verdict(lhs, rhs);
}

}  // namespace mprelay
