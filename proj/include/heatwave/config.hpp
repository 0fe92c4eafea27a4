#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heatwave/medium.hpp"
#include "heatwave/mesh.hpp"

namespace heatwave {

enum class ScenarioKind { classify, selfsim, evolve, stability, convergence };

std::string to_string(ScenarioKind kind);

struct ExperimentConfig {
    ScenarioKind scenario = ScenarioKind::classify;
    double sigma = 2.0;
    double beta = 3.0;
    std::vector<int> dims{1};
    std::optional<double> t0;
    std::vector<int> k{1};

    // Self-similar solves.
    ElementKind element = ElementKind::linear;
    double h = 0.025;
    std::optional<double> truncation;

    // Evolution.
    std::string initial = "selfsim";  // selfsim | zk
    double evolve_h = 0.02;
    double amplitude_cap = 1e6;
    double lambda = 2.0;
    double delta_u = 1e-7;
    double safety = 0.5;
    double max_time = 1e3;
    int record_interval = 10;
    std::vector<double> snapshots;

    // Stability.
    std::vector<double> factors{0.8, 1.2};
    double widen = 0.1;
    double eps1 = 0.05;
    double gamma_hold = 1e3;
    double gamma_target = 1e3;

    // Convergence.
    int levels = 4;
    std::optional<double> error_radius;  // convergence: compare only xi <= radius

    std::filesystem::path output = "out";

    MediumParams params(int dim) const;
};

/// key = value lines; '#' starts a comment. Unknown keys and malformed values raise ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Checks every field against the preconditions of the modules the scenario uses.
void validate(const ExperimentConfig& config);

}  // namespace heatwave
