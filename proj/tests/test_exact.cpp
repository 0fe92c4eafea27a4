#include <cmath>
#include <numbers>

#include "doctest.h"
#include "heatwave/errors.hpp"
#include "heatwave/exact.hpp"

using namespace heatwave;

namespace {

double bisect(auto f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("fundamental length and profile values") {
    const double ls = fundamental_length(2.0);
    CHECK(ls == doctest::Approx(std::numbers::pi * std::sqrt(3.0)));
    CHECK(zk_eval(2.0, 0.0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
    CHECK(zk_eval(2.0, ls / 2.0) == 0.0);
    CHECK(zk_eval(2.0, ls / 4.0) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(zk_eval(2.0, -ls / 4.0) == doctest::Approx(zk_eval(2.0, ls / 4.0)));
    CHECK(zk_eval(2.0, 0.6 * ls) == 0.0);
    CHECK_THROWS_AS(fundamental_length(0.0), DomainError);
}

TEST_CASE("semi-width is where the profile halves") {
    for (double sigma : {0.5, 1.0, 2.0, 3.0}) {
        const double top = zk_eval(sigma, 0.0);
        const double xs = bisect([&](double x) { return zk_eval(sigma, x) - 0.5 * top; }, 0.0,
                                 fundamental_length(sigma) / 2.0);
        CHECK(zk_semi_width(sigma) == doctest::Approx(xs).epsilon(1e-10));
    }
}

TEST_CASE("profile descriptor needs the S regime in one dimension") {
    const ZKProfile z = zk_profile(MediumParams::make(2, 3, 1));
    CHECK(z.fundamental_length == doctest::Approx(fundamental_length(2.0)));
    CHECK_THROWS_AS(zk_profile(MediumParams::make(2, 3.6, 1)), DomainError);
    CHECK_THROWS_AS(zk_profile(MediumParams::make(2, 3, 2)), DomainError);
}

TEST_CASE("multibump profiles are translates") {
    const double ls = fundamental_length(2.0);
    CHECK(zk_multibump(2.0, 1, 0.3) == doctest::Approx(zk_eval(2.0, 0.3)));
    // k = 2: bumps centered at -L_s/2 and L_s/2, touching at 0
    CHECK(zk_multibump(2.0, 2, ls / 2.0) == doctest::Approx(std::sqrt(1.5)));
    CHECK(zk_multibump(2.0, 2, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zk_multibump(2.0, 2, ls / 2.0 + 0.4) == doctest::Approx(zk_eval(2.0, 0.4)));
    CHECK(zk_multibump(2.0, 3, 0.0) == doctest::Approx(std::sqrt(1.5)));
    CHECK(zk_multibump(2.0, 3, 1.6 * ls) == 0.0);
    CHECK_THROWS_AS(zk_multibump(2.0, 0, 0.0), DomainError);
}

TEST_CASE("heat flux vanishes at the front") {
    // theta^sigma theta' = (theta^{sigma+1})' / (sigma+1), by central differences
    const double sigma = 2.0, half = fundamental_length(sigma) / 2.0;
    double prev = 1e300;
    for (double gap : {1e-1, 1e-2, 1e-3}) {
        const double x = half - gap, d = gap * 1e-3;
        auto g = [&](double s) { return std::pow(zk_eval(sigma, s), sigma + 1.0); };
        const double flux = std::abs((g(x + d) - g(x - d)) / (2.0 * d) / (sigma + 1.0));
        CHECK(flux < prev);
        prev = flux;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("LS power tail") {
    const auto p = MediumParams::make(2, 3.6, 1);
    CHECK(ls_tail_exponent(p) == doctest::Approx(2.0 / 0.6));
    CHECK(ls_tail_slope(p, 10.0, 0.01) == doctest::Approx(-0.0033333333).epsilon(1e-8));
    CHECK(ls_tail_slope(p, 10.0, 0.0) == 0.0);
    // The tail C xi^{-p} has exactly this slope
    const double q = ls_tail_exponent(p);
    auto tail = [&](double x) { return 3.0 * std::pow(x, -q); };
    const double x = 7.0, d = 1e-5;
    CHECK(ls_tail_slope(p, x, tail(x)) == doctest::Approx((tail(x + d) - tail(x - d)) / (2 * d)).epsilon(1e-7));
}
