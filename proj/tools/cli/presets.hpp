#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cli/config.hpp"

namespace mprelay::cli {

// Built-in experiment configurations covering the standard study setups:
// each power-scaling case on a uniform profile, plus one deliberately
// unbalanced profile where the two schemes split the per-user wins.
enum class FigurePreset { Fig2, Fig3, Fig4, Fig5 };

std::optional<FigurePreset> preset_from_name(std::string_view name);

struct PresetBundle {
    ExperimentConfig config;
    std::vector<std::string> csv_comments;  // emitted at the top of the CSV
    std::vector<std::string> notes;         // informational lines for stderr
};

PresetBundle preset_bundle(FigurePreset preset);

}  // namespace mprelay::cli
