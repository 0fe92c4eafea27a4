#include "heatwave/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatwave/errors.hpp"

namespace heatwave {

double fundamental_length(double sigma) {
    if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
    return 2.0 * std::numbers::pi * std::sqrt(sigma + 1.0) / sigma;
}

double zk_semi_width(double sigma) {
    return fundamental_length(sigma) * std::acos(std::pow(2.0, -sigma / 2.0)) / std::numbers::pi;
}

ZKProfile zk_profile(const MediumParams& params) {
    params.validate();
    if (params.dim != 1 || !is_s_boundary(params.sigma, params.beta))
        throw DomainError("the elementary S-regime profile needs N = 1 and beta = sigma + 1");
    return {params, fundamental_length(params.sigma), zk_semi_width(params.sigma)};
}

double zk_eval(double sigma, double xi) {
    const double ls = fundamental_length(sigma);
    if (std::abs(xi) >= ls / 2.0) return 0.0;
    const double c = std::cos(std::numbers::pi * xi / ls);
    return std::pow(2.0 * (sigma + 1.0) / (sigma + 2.0) * c * c, 1.0 / sigma);
}

double zk_multibump(double sigma, int k, double xi) {
    if (k < 1) throw DomainError("multibump index must be at least 1");
    const double ls = fundamental_length(sigma);
    const double half = k * ls / 2.0;
    if (std::abs(xi) >= half) return 0.0;
    // Bump j is centered at (j - (k-1)/2) L_s.
    const double s = (xi + half) / ls;
    const double j = std::min(std::floor(s), static_cast<double>(k - 1));
    const double center = (j - (k - 1) / 2.0) * ls;
    return zk_eval(sigma, xi - center);
}

double ls_tail_exponent(const MediumParams& params) {
    if (params.beta <= params.sigma + 1.0 || is_s_boundary(params.sigma, params.beta))
        throw DomainError("the power tail needs beta > sigma + 1");
    return 2.0 / (params.beta - params.sigma - 1.0);
}

double ls_tail_slope(const MediumParams& params, double xi, double theta) {
    const double p = ls_tail_exponent(params);
    if (!(xi > 0.0)) throw DomainError("tail slope needs xi > 0");
    if (theta < 0.0) throw DomainError("tail slope needs theta >= 0");
    return -p * theta / xi;
}

}  // namespace heatwave
