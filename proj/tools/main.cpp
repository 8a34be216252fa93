#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/check.hpp"
#include "cli/runner.hpp"
#include "mprelay/errors.hpp"

namespace {

using namespace mprelay;
using namespace mprelay::cli;

// A config argument is either a preset name or a path to a config file.
PresetBundle resolve_config(const std::string& arg) {
    if (const auto preset = preset_from_name(arg)) return preset_bundle(*preset);
    return {parse_config_file(arg), {}, {}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-pair amplify-and-forward relay: Monte Carlo sum-rate sweeps and "
                 "closed-form large-array limits"};
    app.require_subcommand(1);

    std::string sweep_arg;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Estimate ergodic sum rates over an antenna-count grid");
    sweep_cmd->add_option("config", sweep_arg, "config file path or preset name (fig2..fig5)")
        ->required();

    std::string asym_arg;
    CLI::App* asym_cmd =
        app.add_subcommand("asymptote", "Evaluate the deterministic large-N limits");
    asym_cmd->add_option("config", asym_arg, "config file path or preset name (fig2..fig5)")
        ->required();

    std::string repro_arg;
    std::size_t repro_trials = 0;
    std::uint64_t repro_seed = 0;
    std::string repro_out;
    unsigned repro_threads = 0;
    CLI::App* repro_cmd =
        app.add_subcommand("reproduce", "Run a preset sweep, with optional overrides");
    repro_cmd->add_option("figure", repro_arg, "preset name (fig2..fig5)")->required();
    CLI::Option* trials_opt =
        repro_cmd->add_option("--trials", repro_trials, "override the trial count");
    CLI::Option* seed_opt = repro_cmd->add_option("--seed", repro_seed, "override the seed");
    CLI::Option* out_opt =
        repro_cmd->add_option("--out", repro_out, "override the output CSV path");
    CLI::Option* threads_opt =
        repro_cmd->add_option("--threads", repro_threads, "override the worker count");

    std::string fault;
    CLI::App* check_cmd =
        app.add_subcommand("check", "Run the internal consistency suites");
    check_cmd->add_option("--inject-fault", fault, "corrupt a known quantity (testing only)")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sweep_cmd->parsed()) {
            const PresetBundle bundle = resolve_config(sweep_arg);
            return run_sweep(bundle.config, bundle.csv_comments, bundle.notes, std::cerr);
        }
        if (asym_cmd->parsed()) {
            PresetBundle bundle = resolve_config(asym_arg);
            std::string default_out = "asymptote.csv";
            if (preset_from_name(asym_arg)) {
                // The preset's out key names the sweep product, not this one.
                bundle.config.out_path.clear();
                default_out = asym_arg + "_asymptote.csv";
            }
            return run_asymptote(bundle.config, bundle.csv_comments, bundle.notes,
                                 default_out, std::cout, std::cerr);
        }
        if (repro_cmd->parsed()) {
            const auto preset = preset_from_name(repro_arg);
            if (!preset) {
                throw ConfigError(repro_arg, 0, "unknown preset (expected fig2..fig5)");
            }
            ReproduceOptions opts;
            if (trials_opt->count()) opts.trials = repro_trials;
            if (seed_opt->count()) opts.seed = repro_seed;
            if (out_opt->count()) opts.out_path = repro_out;
            if (threads_opt->count()) opts.threads = repro_threads;
            return run_reproduce(preset_bundle(*preset), opts, std::cerr);
        }
        CheckOptions opts;
        if (!fault.empty()) {
            if (fault == "zf-gain-x2") {
                opts.zf_gain_scale = 2.0;
            } else {
                throw ConfigError("--inject-fault", 0, "unknown fault '" + fault + "'");
            }
        }
        return run_check(opts, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ZfInfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
