#pragma once

#include <span>
#include <string>
#include <vector>

#include "heatwave/evolve.hpp"
#include "heatwave/medium.hpp"
#include "heatwave/mesh.hpp"

namespace heatwave {

/// gamma = max u / max theta_s.
double representation_gamma(std::span<const double> u, const GridFunction& reference);

/// Theta(t, xi) = u(t, xi gamma^{-m}) / gamma on the reference grid.
std::vector<double> ss_representation(std::span<const double> x, std::span<const double> u,
                                      const GridFunction& reference, const MediumParams& params);
std::vector<double> ss_representation(const EvolutionState& state, const GridFunction& reference,
                                      const MediumParams& params);

/// u(t, xi psi(t)) / phi(t) with the known blow-up time t0.
std::vector<double> ss_representation_known_t0(std::span<const double> x, std::span<const double> u,
                                               double t, const MediumParams& params, double t0,
                                               std::span<const double> xi);

/// Relative max-norm of Theta - theta_s where theta_s > level * max theta_s.
double deviation_norm(std::span<const double> theta_rep, const GridFunction& reference, double level = 1e-3);

struct SemiWidth {
    double value = 0.0;
    bool defined = false;
    bool monotone = false;
};

/// Radius where u falls to u(0)/2; the first crossing for nonmonotone profiles.
SemiWidth semi_width(std::span<const double> x, std::span<const double> u);

struct FrontPoint {
    double value = 0.0;
    double bracket_hi = 0.0;
    bool saturated = false;
};

/// Largest node with u > delta; bracket_hi is the next node.
FrontPoint front_point(std::span<const double> x, std::span<const double> u, double delta = 1e-12);

enum class VerdictKind { structurally_stable, metastable, divergent };

std::string to_string(VerdictKind kind);

struct StabilityThresholds {
    double eps1 = 0.05;
    double gamma_hold = 1e3;
    double growth_required = 1e3;
    double trend_slack = 1e-3;
};

struct StabilityVerdict {
    VerdictKind kind = VerdictKind::divergent;
    double hold_until_gamma = 0.0;
    double final_deviation = 0.0;
};

StabilityVerdict stability_verdict(const std::vector<SeriesRecord>& series,
                                   const StabilityThresholds& thresholds = {});

}  // namespace heatwave
