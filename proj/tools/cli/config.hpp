#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mprelay/montecarlo.hpp"

namespace mprelay::cli {

// Problem in a config file or config-like argument. line() is 1-based;
// 0 means the problem is not tied to a single line (missing key, bad file).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& path, std::size_t line, const std::string& msg);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// One experiment as described by a config file: which schemes to run, how
// the powers scale with N, the pairs' large-scale gains, the antenna grid,
// and the sampling controls.
struct ExperimentConfig {
    std::vector<RelayScheme> schemes;
    ScalingCase scaling = Unscaled{1.0, 1.0};
    std::size_t n_pairs = 0;
    std::vector<double> eta1;
    std::vector<double> eta2;
    double noise_power = 1.0;
    std::vector<std::size_t> antenna_counts;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out_path;  // empty: command-specific default

    LargeScaleProfile profile() const { return {eta1, eta2}; }
    SweepSpec to_sweep_spec() const;

    bool operator==(const ExperimentConfig&) const = default;
};

// "10db" -> 10^(10/10), "3lin" -> 3. The unit suffix is mandatory so a
// config never silently mixes dB and linear readings.
double parse_power(std::string_view text, const std::string& path, std::size_t line);

// Parses the key = value config dialect. `path` only labels errors.
ExperimentConfig parse_config_text(std::string_view text, const std::string& path);
ExperimentConfig parse_config_file(const std::string& path);

// Canonical text form; parse_config_text(to_config_text(c), _) == c.
std::string to_config_text(const ExperimentConfig& config);

}  // namespace mprelay::cli
