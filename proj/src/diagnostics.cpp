#include "heatwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heatwave/errors.hpp"
#include "heatwave/numfmt.hpp"

namespace heatwave {

double representation_gamma(std::span<const double> u, const GridFunction& reference) {
    const double top = *std::max_element(reference.v.begin(), reference.v.end());
    if (!(top > 0.0)) throw DomainError("reference profile must have a positive maximum");
    return *std::max_element(u.begin(), u.end()) / top;
}

std::vector<double> ss_representation(std::span<const double> x, std::span<const double> u,
                                      const GridFunction& reference, const MediumParams& params) {
    const double gamma = representation_gamma(u, reference);
    if (!(gamma > 0.0)) throw DomainError("self-similar representation needs max u > 0");
    const double stretch = std::pow(gamma, -params.m());
    std::vector<double> out(reference.x.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = interpolate_linear(x, u, reference.x[i] * stretch) / gamma;
    return out;
}

std::vector<double> ss_representation(const EvolutionState& state, const GridFunction& reference,
                                      const MediumParams& params) {
    return ss_representation(state.x, state.u, reference, params);
}

std::vector<double> ss_representation_known_t0(std::span<const double> x, std::span<const double> u,
                                               double t, const MediumParams& params, double t0,
                                               std::span<const double> xi) {
    MediumParams p = params;
    p.t0 = t0;
    const Scaling sc = scaling_laws(p, t);
    std::vector<double> out(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) out[i] = interpolate_linear(x, u, xi[i] * sc.psi) / sc.phi;
    return out;
}

double deviation_norm(std::span<const double> rep, const GridFunction& reference, double level) {
    if (rep.size() != reference.v.size()) throw DomainError("representation and reference sizes differ");
    const double top = *std::max_element(reference.v.begin(), reference.v.end());
    double dev = 0.0;
    for (std::size_t i = 0; i < rep.size(); ++i)
        if (reference.v[i] > level * top) dev = std::max(dev, std::abs(rep[i] - reference.v[i]));
    return dev / top;
}

SemiWidth semi_width(std::span<const double> x, std::span<const double> u) {
    SemiWidth sw;
    sw.value = std::numeric_limits<double>::quiet_NaN();
    if (u.empty() || !(u[0] > 0.0)) return sw;
    const double top = *std::max_element(u.begin(), u.end());
    sw.monotone = true;
    for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i] > u[i - 1] + 1e-12 * top) sw.monotone = false;
    const double half = 0.5 * u[0];
    for (std::size_t i = 1; i < u.size(); ++i) {
        if (u[i] <= half) {
            const double w = (u[i - 1] - half) / (u[i - 1] - u[i]);
            sw.value = x[i - 1] + w * (x[i] - x[i - 1]);
            sw.defined = true;
            return sw;
        }
    }
    return sw;
}

FrontPoint front_point(std::span<const double> x, std::span<const double> u, double delta) {
    FrontPoint fp;
    std::size_t last = u.size();
    for (std::size_t i = u.size(); i-- > 0;) {
        if (u[i] > delta) {
            last = i;
            break;
        }
    }
    if (last == u.size()) return fp;
    // With u(X) = 0 held, positivity up to the last interior node means no compact support.
    if (last + 2 >= u.size()) {
        fp.value = x.back();
        fp.bracket_hi = x.back();
        fp.saturated = true;
        return fp;
    }
    fp.value = x[last];
    fp.bracket_hi = x[last + 1];
    return fp;
}

std::string to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::structurally_stable: return "structurally_stable";
        case VerdictKind::metastable: return "metastable";
        case VerdictKind::divergent: return "divergent";
    }
    return "?";
}

StabilityVerdict stability_verdict(const std::vector<SeriesRecord>& series, const StabilityThresholds& th) {
    if (series.empty()) throw DomainError("stability verdict needs a nonempty series");
    const double gamma_end = series.back().gamma;
    if (gamma_end < th.growth_required)
        throw DomainError("stability verdict needs amplitude growth of at least " +
                          format_double(th.growth_required) + ", series reached " + format_double(gamma_end));
    for (const auto& r : series)
        if (std::isnan(r.dev)) throw DomainError("stability verdict needs deviation values");

    StabilityVerdict v;
    v.final_deviation = series.back().dev;
    // Last decade of amplitude growth.
    std::size_t first = series.size() - 1;
    while (first > 0 && series[first - 1].gamma >= gamma_end / 10.0) --first;
    bool within = true;
    for (std::size_t i = first; i < series.size(); ++i) within = within && series[i].dev <= th.eps1;
    const bool nonincreasing = series.back().dev <= series[first].dev + th.trend_slack;
    if (within && nonincreasing) {
        v.kind = VerdictKind::structurally_stable;
        v.hold_until_gamma = gamma_end;
        return v;
    }
    // Held within eps1 until gamma_hold, then departed.
    std::size_t i = 0;
    while (i < series.size() && series[i].dev <= th.eps1) ++i;
    if (i > 0 && i < series.size() && series[i].gamma >= th.gamma_hold) {
        v.kind = VerdictKind::metastable;
        v.hold_until_gamma = series[i].gamma;
        return v;
    }
    v.kind = VerdictKind::divergent;
    v.hold_until_gamma = i > 0 ? series[i - 1].gamma : 1.0;
    return v;
}

}  // namespace heatwave
