#include "mprelay/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mprelay/errors.hpp"
#include "mprelay/random.hpp"

namespace mprelay {
namespace {

double one_trial(RelayScheme scheme, const SystemConfig& config,
                 const LargeScaleProfile& profile, const PowerSetting& pw,
                 const RandomSource& rng) {
    const ChannelRealization ch = draw_channels(config, profile, rng);
    PerUserSinr sinr;
    switch (scheme) {
        case RelayScheme::MrcMrt: sinr = mrc_sinr(ch, pw, config.noise_power); break;
        case RelayScheme::Zf: sinr = zf_snr(ch, pw, config.noise_power); break;
        case RelayScheme::NaiveOrthogonal: sinr = ns_snr(ch, pw, config.noise_power); break;
    }
    return instantaneous_sum_rate(sinr, scheme);
}

// Base stream offset so different schemes and antenna counts never share
// counter streams even under the same seed.
std::uint64_t stream_base(RelayScheme scheme, std::size_t n_antennas) {
    const std::uint64_t tag =
        (static_cast<std::uint64_t>(scheme) + 1) * 0x9E3779B97F4A7C15ull;
    return mix64(tag ^ static_cast<std::uint64_t>(n_antennas));
}

}  // namespace

PowerSetting realized_powers(const ScalingCase& sc, std::size_t n_antennas) {
    if (n_antennas == 0) {
        throw std::invalid_argument("realized_powers: antenna count must be positive");
    }
    const double n = static_cast<double>(n_antennas);
    if (const CaseI* c = std::get_if<CaseI>(&sc)) return {c->e_t / n, c->p_r};
    if (const CaseII* c = std::get_if<CaseII>(&sc)) return {c->p_t, c->e_r / n};
    if (const CaseIII* c = std::get_if<CaseIII>(&sc)) return {c->e_t / n, c->e_r / n};
    const Unscaled& u = std::get<Unscaled>(sc);
    return {u.p_t, u.p_r};
}

Estimate estimate_ergodic_sum_rate(RelayScheme scheme, std::size_t n_antennas,
                                   const ScalingCase& sc, const LargeScaleProfile& profile,
                                   double noise_power, std::size_t trials, std::uint64_t seed,
                                   unsigned workers) {
    if (trials < 2) {
        throw std::invalid_argument("estimate_ergodic_sum_rate: need at least 2 trials");
    }
    if (scheme == RelayScheme::Zf && n_antennas < profile.n_pairs()) {
        std::ostringstream os;
        os << "zero-forcing infeasible: N = " << n_antennas << " < K = " << profile.n_pairs();
        throw ZfInfeasibleError(os.str());
    }
    const SystemConfig config(n_antennas, profile.n_pairs(), noise_power);
    const PowerSetting pw = realized_powers(sc, n_antennas);
    const std::uint64_t base = stream_base(scheme, n_antennas);

    std::vector<double> rates(trials);
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const double rate =
                one_trial(scheme, config, profile, pw, RandomSource(seed, base + t));
            if (!std::isfinite(rate)) {
                std::ostringstream os;
                os << "non-finite sum rate in trial " << t << " (scheme "
                   << scheme_name(scheme) << ", N = " << n_antennas << ")";
                throw std::runtime_error(os.str());
            }
            rates[t] = rate;
        }
    };

    const unsigned n_workers =
        std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(trials)));
    if (n_workers == 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> failures(n_workers);
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            const std::size_t begin = trials * w / n_workers;
            const std::size_t end = trials * (w + 1) / n_workers;
            pool.emplace_back([&, w, begin, end] {
                try {
                    run_range(begin, end);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (std::thread& th : pool) th.join();
        for (const std::exception_ptr& e : failures) {
            if (e) std::rethrow_exception(e);
        }
    }

    double sum = 0.0;
    for (double r : rates) sum += r;
    const double mean = sum / static_cast<double>(trials);
    double sq = 0.0;
    for (double r : rates) sq += (r - mean) * (r - mean);
    const double sd = std::sqrt(sq / static_cast<double>(trials - 1));
    return {mean, sd / std::sqrt(static_cast<double>(trials)), trials};
}

std::vector<SweepRow> sweep(const SweepSpec& spec, unsigned workers) {
    if (spec.schemes.empty()) {
        throw std::invalid_argument("sweep: need at least one scheme");
    }
    if (spec.antenna_counts.empty()) {
        throw std::invalid_argument("sweep: need at least one antenna count");
    }
    for (std::size_t i = 1; i < spec.antenna_counts.size(); ++i) {
        if (spec.antenna_counts[i] <= spec.antenna_counts[i - 1]) {
            throw std::invalid_argument("sweep: antenna counts must be strictly increasing");
        }
    }
    if (spec.trials < 2) {
        throw std::invalid_argument("sweep: need at least 2 trials");
    }
    const bool has_zf = std::find(spec.schemes.begin(), spec.schemes.end(), RelayScheme::Zf) !=
                        spec.schemes.end();
    if (has_zf && spec.antenna_counts.front() < spec.profile.n_pairs()) {
        std::ostringstream os;
        os << "zero-forcing infeasible: N = " << spec.antenna_counts.front()
           << " < K = " << spec.profile.n_pairs();
        throw ZfInfeasibleError(os.str());
    }
    const bool unscaled = std::holds_alternative<Unscaled>(spec.scaling);

    std::vector<SweepRow> rows;
    rows.reserve(spec.schemes.size() * spec.antenna_counts.size());
    for (RelayScheme scheme : spec.schemes) {
        std::optional<double> asymptote;
        if (!unscaled) {
            asymptote =
                asym_report(scheme, spec.scaling, spec.profile, spec.noise_power).sum_rate;
        }
        for (std::size_t n : spec.antenna_counts) {
            rows.push_back({scheme, n,
                            estimate_ergodic_sum_rate(scheme, n, spec.scaling, spec.profile,
                                                      spec.noise_power, spec.trials, spec.seed,
                                                      workers),
                            asymptote});
        }
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_report(const std::vector<SweepRow>& rows) {
    std::vector<ConvergenceRow> out;
    out.reserve(rows.size());
    for (const SweepRow& row : rows) {
        if (!row.asymptote) {
            throw std::invalid_argument(
                "convergence_report: rows from an unscaled sweep have no limit to compare to");
        }
        out.push_back(
            {row.scheme, row.n_antennas, std::abs(row.estimate.mean - *row.asymptote) / *row.asymptote});
    }
    return out;
}

}  // namespace mprelay
