#pragma once

#include <span>
#include <utility>
#include <vector>

#include "heatwave/medium.hpp"
#include "heatwave/mesh.hpp"

namespace heatwave {

/// Bounded solution of the linearization around theta_H = 1 with y(0) = 1, y'(0) = 0.
/// Needs t0 = 1/(beta-1).
double linearized_value(const MediumParams& params, double xi);
std::vector<double> linearized_profile(const MediumParams& params, std::span<const double> xi);

/// Sewing data for the k-th LS structure: theta_0 = 1 + alpha y on [0, sew_point], power tail beyond.
struct SewPlan {
    int k = 1;
    double alpha = 0.0;          // coefficient multiplying y
    double alpha_nominal = 0.0;  // grid value; alpha = +-alpha_nominal / y_scale
    double y_scale = 1.0;        // max |y| on [0, sew_point]
    double sew_point = 0.0;
    double sew_value = 0.0;
    std::vector<double> zeros;   // first k zeros of y
};

SewPlan plan_sewing(const MediumParams& params, int k);

/// Center-shooting solution with a finite front: theta(0) and the samples up to the front.
struct ShootingProfile {
    double theta0 = 0.0;
    double front = 0.0;
    std::vector<double> xi;
    std::vector<double> theta;
    int bisections = 0;
};

/// Bisects theta(0) between profiles that turn upward and profiles that crash to zero.
/// Applies to beta <= sigma + 1.
ShootingProfile shoot_profile(const MediumParams& params);

enum class GuessSource { linearized, zk_multibump, shooting };

struct LinearApproximation {
    MediumParams params;
    int k = 1;
    GuessSource source = GuessSource::linearized;
    double alpha = 0.0;
    double sew_point = 0.0;
    std::vector<double> xi;
    std::vector<double> values;
    std::vector<std::pair<double, double>> clamp_intervals;
};

/// Initial approximation of theta_{s,k} on the degrees of freedom of mesh.
/// LS: linearization sewn to the power tail. S with N = 1: k elementary profiles.
/// HS, and S with N > 1: center shooting (k = 1 only).
LinearApproximation build_guess(const MediumParams& params, int k, const Mesh1D& mesh);

/// Truncation point for the self-similar problem: twice the sew point (LS),
/// 1.5 times the expected support otherwise.
double suggested_truncation(const MediumParams& params, int k);

}  // namespace heatwave
