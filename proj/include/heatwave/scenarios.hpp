#pragma once

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "heatwave/config.hpp"

namespace heatwave {

inline const std::vector<std::string> kProfileHeader{"xi", "theta"};
inline const std::vector<std::string> kSeriesHeader{"t", "umax", "xs", "xf", "X", "tau", "nnodes", "gamma", "dev"};
inline const std::vector<std::string> kSnapshotHeader{"x", "u"};
inline const std::vector<std::string> kConvergenceHeader{"h", "error"};

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitDivergence = 2, kExitConfig = 3 };

/// Maps a caught exception to the process exit code.
int exit_code_for(const std::exception& e);

struct ScenarioResult {
    int exit_code = kExitOk;
    std::string summary_json;
    std::vector<std::filesystem::path> files;
};

/// Validates, runs, writes CSVs and summary.json into out_dir, and schema-checks every CSV.
ScenarioResult run_scenario(const ExperimentConfig& config, const std::filesystem::path& out_dir);

const std::vector<std::string>& reproduce_names();

/// Config text of a canned scenario; ConfigError for unknown names.
std::string pinned_config(const std::string& name);

/// Runs the canned scenario into out_root / name.
ScenarioResult reproduce(const std::string& name, const std::filesystem::path& out_root);

}  // namespace heatwave
