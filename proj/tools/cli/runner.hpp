#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/presets.hpp"

namespace mprelay::cli {

// Six-significant-digit rendering used for every CSV number.
std::string fmt6(double v);

std::string sweep_csv(const ExperimentConfig& config, const std::vector<SweepRow>& rows,
                      const std::vector<std::string>& comments);
std::string asymptote_csv(const ExperimentConfig& config,
                          const std::vector<std::string>& comments);

// Runs the Monte Carlo sweep described by the config, writes the CSV to
// config.out_path (or "sweep.csv"), and prints notes plus a convergence
// summary to err. Returns the process exit code.
int run_sweep(const ExperimentConfig& config, const std::vector<std::string>& comments,
              const std::vector<std::string>& notes, std::ostream& err);

// Evaluates the closed-form large-N limits, writes them to config.out_path
// (or default_out), and echoes the table to out.
int run_asymptote(const ExperimentConfig& config, const std::vector<std::string>& comments,
                  const std::vector<std::string>& notes, const std::string& default_out,
                  std::ostream& out, std::ostream& err);

struct ReproduceOptions {
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_path;
    std::optional<unsigned> threads;
};

// Runs a preset sweep with optional overrides.
int run_reproduce(const PresetBundle& bundle, const ReproduceOptions& opts, std::ostream& err);

}  // namespace mprelay::cli
