#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "heatwave/errors.hpp"
#include "heatwave/evolve.hpp"
#include "heatwave/exact.hpp"
#include "heatwave/selfsim.hpp"

using namespace heatwave;

namespace {

std::vector<double> zk_data(const Mesh1D& mesh) {
    std::vector<double> u;
    for (double x : mesh.vertices()) u.push_back(zk_eval(2.0, x));
    return u;
}

}  // namespace

TEST_CASE("Kirchhoff variable") {
    CHECK(kirchhoff(1.0, 2.0) == doctest::Approx(1.0 / 3.0));
    CHECK(kirchhoff(2.0, 2.0) == doctest::Approx(8.0 / 3.0));
    CHECK(kirchhoff(0.0, 2.0) == 0.0);
    CHECK_THROWS_AS(kirchhoff(-1.0, 2.0), DomainError);
}

TEST_CASE("weighted matrices") {
    for (int dim : {1, 2, 3}) {
        const auto p = MediumParams::make(2, 3.6, dim);
        std::vector<double> x{0.0};
        for (int i = 1; i <= 30; ++i) x.push_back(x.back() + 0.05 + 0.01 * (i % 4));
        const FemMatrices m = assemble(p, x);
        const double X = x.back();
        INFO("N=" << dim);
        CHECK(std::all_of(m.mass.begin(), m.mass.end(), [](double v) { return v > 0.0; }));
        CHECK(std::accumulate(m.mass.begin(), m.mass.end(), 0.0) == doctest::Approx(std::pow(X, dim) / dim).epsilon(1e-12));
        // K annihilates constants row by row
        for (std::size_t i = 0; i < x.size(); ++i) {
            double row = m.diag[i];
            if (i + 1 < x.size()) row += m.upper[i];
            if (i > 0) row += m.upper[i - 1];
            CHECK(std::abs(row) <= 1e-12 * m.diag[i]);
        }
        // the stiffness is the exact weighted Dirichlet form: check one entry
        const double h = x[2] - x[1];
        CHECK(-m.upper[1] == doctest::Approx((std::pow(x[2], dim) - std::pow(x[1], dim)) / dim / (h * h)));
    }
    CHECK_THROWS_AS(assemble(MediumParams::make(2, 3, 1), std::vector<double>{0.0, 0.5, 0.5}), DomainError);
}

TEST_CASE("rate vector") {
    const auto p = MediumParams::make(2, 3, 1);
    const Mesh1D mesh = Mesh1D::uniform(3.0, 30);
    const FemMatrices m = assemble(p, mesh);
    const auto zero = rhs(p, std::vector<double>(31, 0.0), m);
    CHECK(std::all_of(zero.begin(), zero.end(), [](double v) { return v == 0.0; }));
    const auto one = rhs(p, std::vector<double>(31, 1.0), m);
    for (std::size_t i = 0; i + 1 < one.size(); ++i) CHECK(one[i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.back() == 0.0);

    // non-integer exponents take the general path
    const auto q = MediumParams::make(1.5, 2.7, 1);
    const auto r = rhs(q, std::vector<double>(31, 2.0), assemble(q, mesh));
    CHECK(r[5] == doctest::Approx(std::pow(2.0, 2.7)).epsilon(1e-12));
}

TEST_CASE("adaptation modes") {
    CHECK(adaptation_for(MediumParams::make(2, 3.6, 1)) == Adaptation::refine);
    CHECK(adaptation_for(MediumParams::make(2, 2.4, 1)) == Adaptation::stretch);
    CHECK(adaptation_for(MediumParams::make(2, 3, 1)) == Adaptation::none);

    for (double beta : {2.4, 3.6}) {
        const auto p = MediumParams::make(2, beta, 1);
        const Mesh1D mesh = Mesh1D::uniform(8.0, 200);
        std::vector<double> u0;
        for (double x : mesh.vertices()) u0.push_back(std::exp(-x * x));
        EvolutionState st = initial_state(p, mesh, u0);
        CHECK(mesh_law_holds(st, p, {}));
        const AdaptEvent ev = adapt_mesh(st, p);
        CHECK_FALSE(ev.changed());
    }
}

TEST_CASE("zero data is an equilibrium") {
    const auto p = MediumParams::make(2, 3.6, 1);
    const Mesh1D mesh = Mesh1D::uniform(5.0, 50);
    const std::vector<double> zero(51, 0.0);
    EvolutionState st = initial_state(p, mesh, zero);
    const FemMatrices m = assemble(p, mesh);
    step(st, m, p);
    CHECK(std::all_of(st.u.begin(), st.u.end(), [](double v) { return v == 0.0; }));

    EvolveOptions o;
    o.max_time = 2.0;
    const RunResult r = run_to_blowup(p, mesh, zero, o);
    CHECK(r.stop_reason == "max_time");
    CHECK_FALSE(r.estimate.valid);
    for (const auto& s : r.series) CHECK(s.umax == 0.0);
}

TEST_CASE("step respects the explicit bounds") {
    const auto p = MediumParams::make(2, 3, 1);
    const Mesh1D mesh = Mesh1D::uniform(fundamental_length(2.0) * 0.75, 100);
    EvolutionState st = initial_state(p, mesh, zk_data(mesh));
    const FemMatrices m = assemble(p, mesh);
    const EvolveOptions o;
    for (int i = 0; i < 50; ++i) {
        const double bound = step_bound(st, m, p, o);
        CHECK(bound <= o.source_limit / std::pow(st.u_max(), p.beta - 1.0) * (1 + 1e-12));
        const double umax = st.u_max(), t = st.t;
        REQUIRE(step(st, m, p, o) == StepOutcome::accepted);
        CHECK(st.t - t <= bound * (1 + 1e-12));
        CHECK(st.u_max() <= umax * (1.0 + o.growth_limit));
        CHECK(*std::min_element(st.u.begin(), st.u.end()) >= 0.0);
    }
}

TEST_CASE("blow-up fit on synthetic data") {
    const double beta = 2.4, t0 = 1.0 / 1.4;
    std::vector<double> t, u;
    for (int i = 0; i < 200; ++i) {
        const double s = 1.0 - std::pow(10.0, -4.0 * i / 199.0);
        t.push_back(s * t0);
        u.push_back(std::pow(1.0 - s, -1.0 / (beta - 1.0)));
    }
    const BlowupEstimate e = fit_blowup(t, u, beta);
    CHECK(e.valid);
    CHECK(e.fit_t0 == doctest::Approx(t0).epsilon(1e-10));
    CHECK(e.exponent_fit == doctest::Approx(-1.0 / (beta - 1.0)).epsilon(1e-8));
    CHECK_FALSE(fit_blowup({0.1, 0.2}, {11.0, 12.0}, beta).valid);
}

TEST_CASE("elementary S data keeps its support and blows up at T0") {
    const auto p = MediumParams::make(2, 3, 1);
    const double ls = fundamental_length(2.0), h = ls / 100.0;
    const Mesh1D mesh = Mesh1D::uniform(1.5 * ls, 150);
    EvolveOptions o;
    o.amplitude_cap = 1e5;
    o.snapshot_amplitudes = {10.0, 100.0};
    const RunResult r = run_to_blowup(p, mesh, zk_data(mesh), o);
    CHECK(r.stop_reason == "amplitude_cap");
    CHECK(r.negativity_violations == 0);
    CHECK(r.estimate.valid);
    CHECK(r.estimate.fit_t0 == doctest::Approx(0.5).epsilon(0.01));
    CHECK(r.snapshots.size() == 2);
    const double xs0 = r.series.front().xs;
    for (const auto& s : r.series) {
        CHECK(s.xf <= ls / 2.0 + 2.0 * h * (1.0 + 1e-9));
        CHECK(std::abs(s.xs - xs0) <= 0.02 * xs0);
        CHECK(std::isnan(s.dev));
    }
}

TEST_CASE("HS runs stretch the domain and keep the mesh law") {
    const auto p = MediumParams::make(2, 2.4, 1);
    const SelfSimilarSolution s = solve_structure(p, 1, 0.02);
    const Mesh1D mesh = Mesh1D::uniform(6.0, 300);
    std::vector<double> u0;
    for (double x : mesh.vertices()) u0.push_back(interpolate_linear(s.xi, s.theta, x));
    EvolveOptions o;
    o.amplitude_cap = 200.0;
    const RunResult r = run_to_blowup(p, mesh, u0, o, nullptr);
    CHECK(r.stretches >= 1);
    CHECK(r.final_state.domain_edge() == doctest::Approx(6.0 * std::pow(2.0, r.stretches)));
    CHECK(r.mesh_law_violations == 0);
    CHECK(r.negativity_violations == 0);
}

TEST_CASE("LS runs refine and focus") {
    const auto p = MediumParams::make(2, 3.6, 1);
    const SelfSimilarSolution s = solve_structure(p, 1, 0.025);
    const double X = 3.0 * s.xi.back();
    const Mesh1D mesh = Mesh1D::uniform(X, static_cast<int>(std::ceil(X / 0.025)));
    std::vector<double> u0;
    for (double x : mesh.vertices()) u0.push_back(interpolate_linear(s.xi, s.theta, x));
    EvolveOptions o;
    o.amplitude_cap = 300.0;
    const GridFunction ref{s.xi, s.theta};
    const RunResult r = run_to_blowup(p, mesh, u0, o, &ref);
    CHECK(r.refinements >= 1);
    CHECK(r.mesh_law_violations == 0);
    CHECK(r.negativity_violations == 0);
    double prev = 1e300;
    for (const auto& rec : r.series) {
        if (rec.gamma <= 10.0) continue;
        CHECK(rec.xs < prev);
        prev = rec.xs;
        CHECK(rec.dev < 0.01);
    }
    CHECK(prev < 1e300);
}
