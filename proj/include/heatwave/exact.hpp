#pragma once

#include "heatwave/medium.hpp"

namespace heatwave {

/// Fundamental length of the S regime, 2 pi sqrt(sigma+1)/sigma.
double fundamental_length(double sigma);

/// Half-maximum radius of the elementary S-regime profile.
double zk_semi_width(double sigma);

struct ZKProfile {
    MediumParams params;
    double fundamental_length = 0.0;
    double semi_width = 0.0;
};

/// Requires N = 1 and beta = sigma + 1.
ZKProfile zk_profile(const MediumParams& params);

/// Elementary S-regime profile; zero outside |xi| <= L_s/2.
double zk_eval(double sigma, double xi);

/// k elementary profiles with abutting supports, symmetric about 0, total support k L_s.
double zk_multibump(double sigma, int k, double xi);

/// Exponent p of the LS power tail theta ~ C xi^{-p}, p = 2/(beta-sigma-1).
double ls_tail_exponent(const MediumParams& params);

/// theta' implied by the LS power tail at (xi, theta).
double ls_tail_slope(const MediumParams& params, double xi, double theta);

}  // namespace heatwave
