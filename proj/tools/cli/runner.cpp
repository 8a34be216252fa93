#include "cli/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mprelay::cli {
namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path);
    file << text;
    if (!file.flush()) throw std::runtime_error("cannot write " + path);
}

void print_lines(std::ostream& err, const std::vector<std::string>& lines) {
    for (const std::string& line : lines) err << line << "\n";
}

}  // namespace

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string sweep_csv(const ExperimentConfig& config, const std::vector<SweepRow>& rows,
                      const std::vector<std::string>& comments) {
    std::ostringstream os;
    for (const std::string& c : comments) os << c << "\n";
    os << "scheme,case,N,trials,sum_rate_mean,sum_rate_stderr,asymptote\n";
    for (const SweepRow& row : rows) {
        os << scheme_name(row.scheme) << "," << case_name(config.scaling) << ","
           << row.n_antennas << "," << row.estimate.trials << "," << fmt6(row.estimate.mean)
           << "," << fmt6(row.estimate.std_error) << ","
           << (row.asymptote ? fmt6(*row.asymptote) : "") << "\n";
    }
    return os.str();
}

std::string asymptote_csv(const ExperimentConfig& config,
                          const std::vector<std::string>& comments) {
    std::ostringstream os;
    for (const std::string& c : comments) os << c << "\n";
    os << "scheme,k,eta1,eta2,sinr,rate\n";
    const LargeScaleProfile profile = config.profile();
    for (RelayScheme scheme : config.schemes) {
        const AsymptoticReport report =
            asym_report(scheme, config.scaling, profile, config.noise_power);
        for (std::size_t k = 0; k < profile.n_pairs(); ++k) {
            os << scheme_name(scheme) << "," << (k + 1) << "," << fmt6(profile.eta1()[k])
               << "," << fmt6(profile.eta2()[k]) << "," << fmt6(report.per_user_sinr[k])
               << "," << fmt6(report.per_user_rate[k]) << "\n";
        }
        os << scheme_name(scheme) << ",sum,,,," << fmt6(report.sum_rate) << "\n";
    }
    return os.str();
}

int run_sweep(const ExperimentConfig& config, const std::vector<std::string>& comments,
              const std::vector<std::string>& notes, std::ostream& err) {
    const std::vector<SweepRow> rows = sweep(config.to_sweep_spec(), config.threads);
    const std::string out = config.out_path.empty() ? "sweep.csv" : config.out_path;
    write_file(out, sweep_csv(config, rows, comments));

    print_lines(err, notes);
    err << "wrote " << out << " (" << rows.size() << " rows, " << config.trials
        << " trials per point)\n";
    if (!std::holds_alternative<Unscaled>(config.scaling)) {
        // Largest-N row per scheme: how close the sample mean already is
        // to its deterministic limit.
        for (RelayScheme scheme : config.schemes) {
            const SweepRow* last = nullptr;
            for (const SweepRow& row : rows) {
                if (row.scheme == scheme) last = &row;
            }
            if (!last || !last->asymptote) continue;
            const double gap =
                std::abs(last->estimate.mean - *last->asymptote) / *last->asymptote;
            err << "  " << scheme_name(scheme) << ": N=" << last->n_antennas << " mean "
                << fmt6(last->estimate.mean) << " vs limit " << fmt6(*last->asymptote)
                << " (gap " << fmt6(gap * 100.0) << "%)\n";
        }
    }
    return 0;
}

int run_asymptote(const ExperimentConfig& config, const std::vector<std::string>& comments,
                  const std::vector<std::string>& notes, const std::string& default_out,
                  std::ostream& out, std::ostream& err) {
    const std::string text = asymptote_csv(config, comments);
    const std::string path = config.out_path.empty() ? default_out : config.out_path;
    write_file(path, text);
    out << text;
    print_lines(err, notes);
    err << "wrote " << path << "\n";
    return 0;
}

int run_reproduce(const PresetBundle& bundle, const ReproduceOptions& opts, std::ostream& err) {
    ExperimentConfig config = bundle.config;
    if (opts.trials) config.trials = *opts.trials;
    if (opts.seed) config.seed = *opts.seed;
    if (opts.out_path) config.out_path = *opts.out_path;
    if (opts.threads) config.threads = *opts.threads;
    return run_sweep(config, bundle.csv_comments, bundle.notes, err);
}

}  // namespace mprelay::cli
