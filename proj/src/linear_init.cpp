#include "heatwave/linear_init.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "heatwave/errors.hpp"
#include "heatwave/exact.hpp"
#include "heatwave/special.hpp"

namespace heatwave {

namespace {

constexpr double kT0RelTol = 1e-12;

void require_default_t0(const MediumParams& p) {
    const double t0 = 1.0 / (p.beta - 1.0);
    if (std::abs(p.t0 - t0) > kT0RelTol * t0)
        throw DomainError("linearized profile needs t0 = 1/(beta-1)");
}

MediumParams with_default_t0(const MediumParams& p) {
    return MediumParams::make(p.sigma, p.beta, p.dim);
}

// Gamma(nu+1) (2/x)^nu J_nu(x) with nu = N/2 - 1, normalized to 1 at x = 0.
double bessel_branch(int dim, double x) {
    const double nu = dim / 2.0 - 1.0;
    if (x < 1e-4) return 1.0 - x * x / (4.0 * (nu + 1.0));
    if (dim == 1) return std::cos(x);
    if (dim % 2 == 0) {
        const int k = dim / 2 - 1;
        return std::tgamma(nu + 1.0) * std::pow(2.0 / x, nu) * bessel_j(k, x);
    }
    // Half-integer order through the spherical Bessel function j_n, n = nu - 1/2.
    const unsigned n = static_cast<unsigned>(dim - 3) / 2;
    const double jnu = std::sqrt(2.0 * x / std::numbers::pi) * std::sph_bessel(n, x);
    return std::tgamma(nu + 1.0) * std::pow(2.0 / x, nu) * jnu;
}

double linearized_derivative(const MediumParams& p, double xi) {
    if (is_s_boundary(p.sigma, p.beta)) {
        const double h = 1e-6 * std::max(1.0, xi);
        return (linearized_value(p, xi + h) - linearized_value(p, xi - h)) / (2.0 * h);
    }
    const double a = -(p.beta - 1.0) / (p.beta - p.sigma - 1.0);
    const double b = p.dim / 2.0;
    const double m = p.m();
    return a / b * kummer_1f1(a + 1.0, b + 1.0, m * xi * xi / 2.0) * m * xi;
}

template <class F>
double bisect_root(F&& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 100 && hi - lo > 1e-14 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double linearized_value(const MediumParams& p, double xi) {
    p.validate();
    require_default_t0(p);
    xi = std::abs(xi);
    if (is_s_boundary(p.sigma, p.beta)) return bessel_branch(p.dim, std::sqrt(p.beta - 1.0) * xi);
    const double a = -(p.beta - 1.0) / (p.beta - p.sigma - 1.0);
    return kummer_1f1(a, p.dim / 2.0, p.m() * xi * xi / 2.0);
}

std::vector<double> linearized_profile(const MediumParams& p, std::span<const double> xi) {
    std::vector<double> y(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) y[i] = linearized_value(p, xi[i]);
    return y;
}

SewPlan plan_sewing(const MediumParams& params, int k) {
    const MediumParams p = with_default_t0(params);
    if (!(p.beta > p.sigma + 1.0) || is_s_boundary(p.sigma, p.beta))
        throw DomainError("sewing with the power tail needs beta > sigma + 1");
    if (k < 1) throw DomainError("structure index must be at least 1");

    const double xi_max = std::sqrt(2.0 * kKummerMaxAbsZ / p.m());
    const double dxi = 1e-3 * std::max(1.0, 1.0 / std::sqrt(p.m()));
    auto y = [&](double x) { return linearized_value(p, x); };
    auto dy = [&](double x) { return linearized_derivative(p, x); };

    SewPlan plan;
    plan.k = k;
    double x = 0.0, yprev = 1.0;
    while (static_cast<int>(plan.zeros.size()) < k) {
        const double xn = x + dxi;
        if (xn > xi_max)
            throw DomainError("linearized profile has fewer than " + std::to_string(k) +
                              " zeros inside the working range");
        const double yn = y(xn);
        if ((yn < 0.0) != (yprev < 0.0)) plan.zeros.push_back(bisect_root(y, x, xn));
        x = xn;
        yprev = yn;
    }
    // First extremum after the k-th zero.
    double dprev = dy(x);
    double xe = -1.0;
    while (x + dxi <= xi_max) {
        const double xn = x + dxi;
        const double dn = dy(xn);
        if ((dn < 0.0) != (dprev < 0.0)) {
            xe = bisect_root(dy, x, xn);
            break;
        }
        x = xn;
        dprev = dn;
    }
    if (xe < 0.0) throw DomainError("no extremum of the linearized profile after its last zero");
    plan.sew_point = xe;

    double ymax = 0.0;
    for (double s = 0.0; s <= xe; s += dxi) ymax = std::max(ymax, std::abs(y(s)));
    ymax = std::max(ymax, std::abs(y(xe)));
    plan.y_scale = ymax;

    const double sgn = (k % 2 == 1) ? 1.0 : -1.0;
    const double ye = y(xe);
    const int samples = std::max(200, static_cast<int>(xe / dxi));
    for (int step = 1; step <= 9; ++step) {
        const double nominal = 0.1 * step;
        const double alpha = sgn * nominal / ymax;
        const double sew_value = 1.0 + alpha * ye;
        if (!(sew_value > 0.0)) continue;
        std::vector<double> th(samples + 1);
        for (int i = 0; i <= samples; ++i)
            th[i] = std::max(0.0, 1.0 + alpha * y(xe * i / samples));
        if (count_crossings(th, 1.0) != k) continue;
        plan.alpha = alpha;
        plan.alpha_nominal = nominal;
        plan.sew_value = sew_value;
        return plan;
    }
    throw DomainError("no amplitude matches " + std::to_string(k) +
                      " crossings with a positive sew value");
}

ShootingProfile shoot_profile(const MediumParams& params) {
    const MediumParams p = with_default_t0(params);
    if (p.beta > p.sigma + 1.0 && !is_s_boundary(p.sigma, p.beta))
        throw DomainError("center shooting targets finite-front profiles, beta <= sigma + 1");
    using State = std::array<double, 2>;
    namespace ode = boost::numeric::odeint;
    const double sigma = p.sigma, beta = p.beta, mh = p.m_hat(), c = p.c();
    const int n = p.dim;
    constexpr double kXiMax = 60.0;
    constexpr double kX0 = 1e-6;

    // State (theta, F) with F = theta^sigma theta'.
    auto rhs = [&](const State& y, State& dy, double x) {
        const double th = std::max(y[0], 1e-300);
        const double dth = y[1] / std::pow(th, sigma);
        dy[0] = dth;
        dy[1] = -(n - 1.0) / x * y[1] + mh * x * dth + c * th - std::pow(th, beta);
    };

    // true: profile turns upward (theta0 too small). false: crashes to zero (too large).
    auto shoot = [&](double th0, std::vector<double>* xs, std::vector<double>* ths) {
        State y{th0, kX0 / n * (c * th0 - std::pow(th0, beta))};
        auto stepper = ode::make_dense_output(1e-14, 1e-10, ode::runge_kutta_dopri5<State>());
        stepper.initialize(y, kX0, 1e-4);
        if (xs) {
            xs->assign({0.0});
            ths->assign({th0});
        }
        for (int it = 0; it < 2000000; ++it) {
            stepper.do_step(rhs);
            const double x = stepper.current_time();
            const State& s = stepper.current_state();
            if (s[1] > 0.0) return true;
            if (s[0] < 1e-3 * th0) return false;
            if (xs) {
                xs->push_back(x);
                ths->push_back(s[0]);
            }
            if (x >= kXiMax) return true;
        }
        throw ConvergenceError("center shooting exceeded its step budget");
    };

    const double th_h = 1.0;
    double lo = th_h, hi = 2.0 * th_h;
    int grow = 0;
    while (shoot(hi, nullptr, nullptr)) {
        lo = hi;
        hi *= 1.5;
        if (++grow > 20) throw ConvergenceError("center shooting found no upper bracket");
    }
    ShootingProfile out;
    while (hi - lo > 1e-13 * hi && out.bisections < 80) {
        const double mid = 0.5 * (lo + hi);
        (shoot(mid, nullptr, nullptr) ? lo : hi) = mid;
        ++out.bisections;
    }
    shoot(lo, &out.xi, &out.theta);
    out.theta0 = lo;
    out.front = out.xi.back();
    return out;
}

namespace {

double scaled_length(const MediumParams& params) {
    // theta_s for general t0 is theta_H * theta_default(xi * theta_H^m).
    return std::pow(theta_H(params), params.m());
}

}  // namespace

double suggested_truncation(const MediumParams& params, int k) {
    params.validate();
    const double scale = 1.0 / scaled_length(params);
    const bool s_regime = is_s_boundary(params.sigma, params.beta);
    if (s_regime && params.dim == 1) return scale * 1.5 * k * fundamental_length(params.sigma) / 2.0;
    if (params.beta > params.sigma + 1.0 && !s_regime) return scale * 2.0 * plan_sewing(params, k).sew_point;
    if (k != 1) throw DomainError("shooting guesses exist for k = 1 only");
    return scale * 1.5 * shoot_profile(params).front;
}

LinearApproximation build_guess(const MediumParams& params, int k, const Mesh1D& mesh) {
    params.validate();
    if (k < 1) throw DomainError("structure index must be at least 1");
    LinearApproximation g;
    g.params = params;
    g.k = k;
    g.xi = mesh.dof_coordinates();
    g.values.resize(g.xi.size());
    const double th_h = theta_H(params);
    const double stretch = scaled_length(params);
    const MediumParams p = with_default_t0(params);
    const bool s_regime = is_s_boundary(p.sigma, p.beta);

    if (s_regime && p.dim == 1) {
        g.source = GuessSource::zk_multibump;
        for (std::size_t i = 0; i < g.xi.size(); ++i)
            g.values[i] = th_h * zk_multibump(p.sigma, k, g.xi[i] * stretch);
    } else if (p.beta > p.sigma + 1.0 && !s_regime) {
        if (p.dim == 1) {
            const int refined = solution_count(p).refined;
            if (k > refined)
                throw DomainError("k = " + std::to_string(k) + " exceeds the solution count " +
                                  std::to_string(refined));
        }
        const SewPlan plan = plan_sewing(p, k);
        const double tail = ls_tail_exponent(p);
        g.source = GuessSource::linearized;
        g.alpha = plan.alpha;
        g.sew_point = plan.sew_point / stretch;
        bool clamping = false;
        double clamp_start = 0.0;
        for (std::size_t i = 0; i < g.xi.size(); ++i) {
            const double x = g.xi[i] * stretch;
            double v;
            if (x <= plan.sew_point) {
                const double raw = 1.0 + plan.alpha * linearized_value(p, x);
                if (raw < 0.0 && !clamping) {
                    clamping = true;
                    clamp_start = g.xi[i];
                } else if (raw >= 0.0 && clamping) {
                    clamping = false;
                    g.clamp_intervals.emplace_back(clamp_start, g.xi[i]);
                }
                v = std::max(0.0, raw);
            } else {
                if (clamping) {
                    clamping = false;
                    g.clamp_intervals.emplace_back(clamp_start, g.xi[i]);
                }
                v = plan.sew_value * std::pow(plan.sew_point / x, tail);
            }
            g.values[i] = th_h * v;
        }
        if (clamping) g.clamp_intervals.emplace_back(clamp_start, g.xi.back());
    } else {
        if (k != 1) throw DomainError("shooting guesses exist for k = 1 only");
        const ShootingProfile sp = shoot_profile(p);
        g.source = GuessSource::shooting;
        for (std::size_t i = 0; i < g.xi.size(); ++i) {
            const double x = g.xi[i] * stretch;
            g.values[i] = x < sp.front ? th_h * std::max(0.0, interpolate_linear(sp.xi, sp.theta, x)) : 0.0;
        }
    }
    return g;
}

}  // namespace heatwave
