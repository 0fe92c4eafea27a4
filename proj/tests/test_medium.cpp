#include <cmath>

#include "doctest.h"
#include "heatwave/errors.hpp"
#include "heatwave/medium.hpp"

using namespace heatwave;

TEST_CASE("regime classification") {
    CHECK(classify(MediumParams::make(2, 3, 1)).kind == RegimeKind::S);
    CHECK(classify(MediumParams::make(2, 2.4, 1)).kind == RegimeKind::HS);
    CHECK(classify(MediumParams::make(2, 3.6, 1)).kind == RegimeKind::LS);
    CHECK(classify(MediumParams::make(2, 6, 1)).kind == RegimeKind::BeyondFujita);
    // beta_f = 3 + 2/3 for N = 3
    CHECK(classify(MediumParams::make(2, 3.6, 3)).kind == RegimeKind::LS);
    CHECK(classify(MediumParams::make(2, 3.7, 3)).kind == RegimeKind::BeyondFujita);
    CHECK(classify(MediumParams::make(2, 5, 1)).kind == RegimeKind::BeyondFujita);
}

TEST_CASE("S boundary uses a relative tolerance") {
    CHECK(is_s_boundary(2.0, 3.0));
    CHECK(is_s_boundary(2.0, 3.0 * (1.0 + 1e-13)));
    CHECK_FALSE(is_s_boundary(2.0, 3.0 * (1.0 + 1e-10)));
    CHECK(is_s_boundary(0.1 + 0.2, 1.3));
}

TEST_CASE("exponent flags depend on dimension") {
    const Regime r1 = classify(MediumParams::make(2, 3.6, 1));
    CHECK_FALSE(r1.beyond_sobolev.has_value());
    CHECK_FALSE(r1.beyond_u.has_value());

    const auto p3 = MediumParams::make(2, 3.6, 3);
    REQUIRE(beta_sobolev(p3).has_value());
    CHECK(*beta_sobolev(p3) == doctest::Approx(15.0));
    CHECK_FALSE(beta_u(p3).has_value());

    const auto p11 = MediumParams::make(1, 3, 11);
    REQUIRE(beta_u(p11).has_value());
    CHECK(*beta_u(p11) == doctest::Approx(2.0 * (1.0 + 4.0 / (7.0 - 2.0 * std::sqrt(10.0)))));
    CHECK(*beta_p(p11) == doctest::Approx(1.0 + 6.0 + std::sqrt(1.0 + 12.0 + 36.0)));
    const Regime r11 = classify(p11);
    REQUIRE(r11.beyond_p.has_value());
    CHECK_FALSE(*r11.beyond_p);
}

TEST_CASE("solution count") {
    const auto a = solution_count(MediumParams::make(2, 3.6, 1));
    CHECK(a.count == 4);
    CHECK(a.refined == 4);
    CHECK_FALSE(a.differ);

    const auto b = solution_count(MediumParams::make(2, 4, 1));
    CHECK(b.a == doctest::Approx(3.0));
    CHECK(b.count == 2);
    CHECK(b.refined == 2);

    CHECK(solution_count(MediumParams::make(2, 100, 1)).count == 1);
    CHECK_THROWS_AS(solution_count(MediumParams::make(2, 3, 1)), DomainError);
    CHECK_THROWS_AS(solution_count(MediumParams::make(2, 2.4, 1)), DomainError);
}

TEST_CASE("homogeneous solution") {
    CHECK(theta_H(MediumParams::make(2, 3, 1, 0.5)) == doctest::Approx(1.0));
    CHECK(theta_H(MediumParams::make(2, 3, 1, 2.0)) == doctest::Approx(0.5));
    CHECK(theta_H(MediumParams::make(2, 2, 1, 1.0)) == doctest::Approx(1.0));
}

TEST_CASE("scaling laws") {
    const auto p = MediumParams::make(2, 3, 1, 0.5);
    const Scaling s0 = scaling_laws(p, 0.0);
    CHECK(s0.phi == doctest::Approx(1.0));
    CHECK(s0.psi == doctest::Approx(1.0));
    const Scaling s = scaling_laws(p, 0.375);
    CHECK(s.phi == doctest::Approx(2.0));
    CHECK(s.psi == doctest::Approx(1.0));
    CHECK_THROWS_AS(scaling_laws(p, 0.5), DomainError);

    // LS: psi = (1 - t/t0)^{m/(beta-1)} shrinks, so psi = phi^{-m}
    const auto q = MediumParams::make(2, 3.6, 1);
    const Scaling sq = scaling_laws(q, 0.75 * q.t0);
    CHECK(sq.phi == doctest::Approx(std::pow(0.25, -1.0 / 2.6)));
    CHECK(sq.psi == doctest::Approx(std::pow(0.25, 0.3 / 2.6)));
    CHECK(sq.psi == doctest::Approx(std::pow(sq.phi, -0.3)));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(MediumParams::make(2, 0.5, 1), DomainError);
    CHECK_THROWS_AS(MediumParams::make(0, 3, 1), DomainError);
    CHECK_THROWS_AS(MediumParams::make(2, 3, 0), DomainError);
    CHECK_THROWS_AS(MediumParams::make(2, 3, 1, -1.0), DomainError);
    CHECK(MediumParams::make(2, 3.6, 1).t0 == doctest::Approx(1.0 / 2.6));
}
