#include <cmath>
#include <limits>

#include "doctest.h"
#include "heatwave/diagnostics.hpp"
#include "heatwave/errors.hpp"
#include "heatwave/exact.hpp"

using namespace heatwave;

namespace {

GridFunction bell(double l, int n) {
    GridFunction g;
    for (int i = 0; i <= n; ++i) {
        const double x = l * i / n;
        g.x.push_back(x);
        g.v.push_back(std::exp(-x * x) - std::exp(-l * l));
    }
    return g;
}

std::vector<SeriesRecord> series(std::vector<std::pair<double, double>> gamma_dev) {
    std::vector<SeriesRecord> s;
    for (auto [g, d] : gamma_dev) {
        SeriesRecord r;
        r.gamma = g;
        r.dev = d;
        s.push_back(r);
    }
    return s;
}

}  // namespace

TEST_CASE("representation is the identity at the start") {
    const auto p = MediumParams::make(2, 3.6, 1);
    const GridFunction ref = bell(4.0, 80);
    CHECK(representation_gamma(ref.v, ref) == 1.0);
    const auto theta = ss_representation(ref.x, ref.v, ref, p);
    for (std::size_t i = 0; i < theta.size(); ++i) CHECK(theta[i] == doctest::Approx(ref.v[i]));
    CHECK(deviation_norm(theta, ref) == doctest::Approx(0.0));

    const auto known = ss_representation_known_t0(ref.x, ref.v, 0.0, p, p.t0, ref.x);
    for (std::size_t i = 0; i < known.size(); ++i) CHECK(known[i] == doctest::Approx(ref.v[i]));
}

TEST_CASE("representation undoes the self-similar scaling") {
    const auto p = MediumParams::make(2, 3.6, 1);
    const GridFunction ref = bell(4.0, 400);
    const double gamma = 50.0, shrink = std::pow(gamma, p.m());
    std::vector<double> x, u;
    for (int i = 0; i <= 4000; ++i) {
        x.push_back(4.0 * i / 4000.0);
        u.push_back(gamma * interpolate_linear(ref.x, ref.v, x.back() * shrink));
    }
    const auto theta = ss_representation(x, u, ref, p);
    CHECK(deviation_norm(theta, ref) < 1e-4);
    // points mapping past the domain read zero
    std::vector<double> short_x{0.0, 0.1, 0.2}, short_u{50.0, 40.0, 0.0};
    const auto clipped = ss_representation(short_x, short_u, ref, p);
    CHECK(clipped.back() == 0.0);
}

TEST_CASE("representation with a known blow-up time") {
    const auto p = MediumParams::make(2, 3, 1);  // m = 0, phi = (1 - t/T0)^{-1/2}
    const GridFunction ref = bell(3.0, 60);
    std::vector<double> u;
    for (double v : ref.v) u.push_back(2.0 * v);
    const auto theta = ss_representation_known_t0(ref.x, u, 0.375, p, 0.5, ref.x);
    for (std::size_t i = 0; i < theta.size(); ++i) CHECK(theta[i] == doctest::Approx(ref.v[i]));
}

TEST_CASE("deviation ignores the far tail") {
    GridFunction ref{{0.0, 1.0, 2.0, 3.0}, {1.0, 0.5, 1e-4, 0.0}};
    CHECK(deviation_norm(std::vector<double>{1.0, 0.5, 0.3, 0.2}, ref) == 0.0);
    CHECK(deviation_norm(std::vector<double>{1.1, 0.5, 0.0, 0.0}, ref) == doctest::Approx(0.1));
    CHECK_THROWS_AS(deviation_norm(std::vector<double>{1.0}, ref), DomainError);
}

TEST_CASE("semi-width") {
    const std::vector<double> x{0.0, 0.25, 0.5, 0.75, 1.0};
    const SemiWidth tri = semi_width(x, std::vector<double>{2.0, 1.5, 1.0, 0.5, 0.0});
    CHECK(tri.defined);
    CHECK(tri.monotone);
    CHECK(tri.value == doctest::Approx(0.5));
    const SemiWidth flat = semi_width(x, std::vector<double>(5, 3.0));
    CHECK_FALSE(flat.defined);
    CHECK(std::isnan(flat.value));
    CHECK_FALSE(semi_width(x, std::vector<double>{1.0, 2.0, 0.0, 0.0, 0.0}).monotone);

    const double ls = fundamental_length(2.0);
    std::vector<double> zx, zu;
    for (int i = 0; i <= 600; ++i) {
        zx.push_back(0.75 * ls * i / 600.0);
        zu.push_back(zk_eval(2.0, zx.back()));
    }
    CHECK(semi_width(zx, zu).value == doctest::Approx(zk_semi_width(2.0)).epsilon(1e-4));
}

TEST_CASE("front point") {
    const double ls = fundamental_length(2.0);
    std::vector<double> x, u;
    for (int i = 0; i <= 97; ++i) {
        x.push_back(0.75 * ls * i / 97.0);
        u.push_back(zk_eval(2.0, x.back()));
    }
    const FrontPoint fp = front_point(x, u);
    CHECK_FALSE(fp.saturated);
    CHECK(std::abs(fp.value - ls / 2.0) <= x[1]);
    CHECK(fp.value < ls / 2.0);
    CHECK(fp.bracket_hi >= ls / 2.0);

    const FrontPoint none = front_point(x, std::vector<double>(x.size(), 0.0));
    CHECK(none.value == 0.0);
    std::vector<double> full(x.size(), 1.0);
    full.back() = 0.0;
    const FrontPoint sat = front_point(x, full);
    CHECK(sat.saturated);
    CHECK(sat.value == x.back());
}

TEST_CASE("stability verdicts") {
    CHECK(to_string(VerdictKind::metastable) == "metastable");
    const auto stable = stability_verdict(series({{1, 0.2}, {10, 0.05}, {100, 0.01}, {500, 0.008}, {1000, 0.006}}));
    CHECK(stable.kind == VerdictKind::structurally_stable);
    CHECK(stable.final_deviation == doctest::Approx(0.006));

    StabilityThresholds th;
    th.gamma_hold = 100.0;
    const auto meta = stability_verdict(series({{1, 0.0}, {50, 0.01}, {200, 0.03}, {400, 0.2}, {1000, 0.5}}), th);
    CHECK(meta.kind == VerdictKind::metastable);
    CHECK(meta.hold_until_gamma == doctest::Approx(400.0));

    const auto div = stability_verdict(series({{1, 0.0}, {20, 0.3}, {200, 0.6}, {1000, 0.9}}), th);
    CHECK(div.kind == VerdictKind::divergent);

    // growing deviation in the last decade fails the trend test even below eps1
    const auto creeping = stability_verdict(series({{1, 0.0}, {100, 0.001}, {1000, 0.04}}), th);
    CHECK(creeping.kind != VerdictKind::structurally_stable);

    CHECK_THROWS_AS(stability_verdict(series({{1, 0.0}, {10, 0.0}})), DomainError);
    CHECK_THROWS_AS(stability_verdict({}), DomainError);
    CHECK_THROWS_AS(stability_verdict(series({{1, 0.0}, {1000, std::numeric_limits<double>::quiet_NaN()}})), DomainError);
}
