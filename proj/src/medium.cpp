#include "heatwave/medium.hpp"

#include <cmath>

#include "heatwave/errors.hpp"
#include "heatwave/numfmt.hpp"

namespace heatwave {

namespace {
constexpr double kBoundaryRelTol = 1e-12;
constexpr double kIntegerTol = 1e-12;
}  // namespace

MediumParams MediumParams::make(double sigma, double beta, int dim, std::optional<double> t0) {
    MediumParams p;
    p.sigma = sigma;
    p.beta = beta;
    p.dim = dim;
    p.t0 = t0.value_or(beta > 1.0 ? 1.0 / (beta - 1.0) : 1.0);
    p.validate();
    return p;
}

void MediumParams::validate() const {
    if (!(std::isfinite(sigma) && sigma > 0.0))
        throw DomainError("sigma must be positive, got " + format_double(sigma));
    if (!(std::isfinite(beta) && beta > 1.0))
        throw DomainError("beta must exceed 1, got " + format_double(beta));
    if (dim < 1)
        throw DomainError("dim must be at least 1, got " + std::to_string(dim));
    if (!(std::isfinite(t0) && t0 > 0.0))
        throw DomainError("t0 must be positive, got " + format_double(t0));
}

std::string to_string(RegimeKind kind) {
    switch (kind) {
        case RegimeKind::HS: return "HS";
        case RegimeKind::S: return "S";
        case RegimeKind::LS: return "LS";
        case RegimeKind::BeyondFujita: return "BeyondFujita";
    }
    return "?";
}

bool is_s_boundary(double sigma, double beta) {
    return std::abs(beta - (sigma + 1.0)) <= kBoundaryRelTol * (sigma + 1.0);
}

std::optional<double> beta_sobolev(const MediumParams& p) {
    if (p.dim < 3) return std::nullopt;
    return (p.sigma + 1.0) * (p.dim + 2.0) / (p.dim - 2.0);
}

std::optional<double> beta_u(const MediumParams& p) {
    if (p.dim < 11) return std::nullopt;
    const double n = p.dim;
    return (p.sigma + 1.0) * (1.0 + 4.0 / (n - 4.0 - 2.0 * std::sqrt(n - 1.0)));
}

std::optional<double> beta_p(const MediumParams& p) {
    if (p.dim < 11) return std::nullopt;
    const double s = p.sigma;
    const double d = p.dim - 10.0;
    const double disc = s * s * d * d + 2.0 * s * (5.0 * s + 1.0) * d + 9.0 * (s + 1.0) * (s + 1.0);
    return 1.0 + 3.0 * (s + 1.0) + std::sqrt(disc) / d;
}

Regime classify(const MediumParams& p) {
    p.validate();
    Regime r;
    if (is_s_boundary(p.sigma, p.beta))
        r.kind = RegimeKind::S;
    else if (p.beta < p.sigma + 1.0)
        r.kind = RegimeKind::HS;
    else if (p.beta < p.beta_f())
        r.kind = RegimeKind::LS;
    else
        r.kind = RegimeKind::BeyondFujita;
    if (auto bs = beta_sobolev(p)) r.beyond_sobolev = p.beta > *bs;
    if (auto bu = beta_u(p)) r.beyond_u = p.beta > *bu;
    if (auto bp = beta_p(p)) r.beyond_p = p.beta > *bp;
    return r;
}

SolutionCount solution_count(const MediumParams& p) {
    p.validate();
    if (p.beta <= p.sigma + 1.0 || is_s_boundary(p.sigma, p.beta))
        throw DomainError("solution count needs beta > sigma + 1");
    if (p.dim != 1) throw DomainError("solution count is stated for N = 1 only");
    SolutionCount sc;
    sc.a = (p.beta - 1.0) / (p.beta - p.sigma - 1.0);
    sc.count = static_cast<int>(-std::floor(-sc.a)) - 1;
    const double nearest = std::round(sc.a);
    const bool integer = std::abs(sc.a - nearest) <= kIntegerTol * sc.a;
    sc.refined = integer ? static_cast<int>(nearest) - 1 : static_cast<int>(std::floor(sc.a));
    sc.differ = sc.count != sc.refined;
    return sc;
}

double theta_H(const MediumParams& p) {
    return std::pow(p.t0 * (p.beta - 1.0), -1.0 / (p.beta - 1.0));
}

Scaling scaling_laws(const MediumParams& p, double t) {
    if (!(t >= 0.0 && t < p.t0))
        throw DomainError("scaling laws need 0 <= t < t0");
    const double s = 1.0 - t / p.t0;
    return {std::pow(s, -1.0 / (p.beta - 1.0)), std::pow(s, p.m() / (p.beta - 1.0))};
}

}  // namespace heatwave
