#include "heatwave/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heatwave/diagnostics.hpp"
#include "heatwave/errors.hpp"

namespace heatwave {

namespace {

// Small integer exponents are evaluated by multiplication; -1 otherwise.
int integer_exponent(double e) {
    return (e == std::floor(e) && e >= 1.0 && e <= 8.0) ? static_cast<int>(e) : -1;
}

double ipow(double v, int e) {
    double r = v;
    for (int i = 1; i < e; ++i) r *= v;
    return r;
}

}  // namespace

double kirchhoff(double u, double sigma) {
    if (u < 0.0) throw DomainError("Kirchhoff variable needs u >= 0");
    return std::pow(u, sigma + 1.0) / (sigma + 1.0);
}

FemMatrices assemble(const MediumParams& params, const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("assembly needs at least one element");
    const int dim = params.dim;
    FemMatrices m;
    m.mass.assign(n, 0.0);
    m.diag.assign(n, 0.0);
    m.upper.assign(n - 1, 0.0);
    for (std::size_t e = 0; e + 1 < n; ++e) {
        const double a = x[e], b = x[e + 1], h = b - a;
        if (!(h > 0.0)) throw DomainError("nodes must be strictly increasing");
        // I0 = int x^{N-1}, I1 = int x^N over the element, exact.
        const double i0 = (std::pow(b, dim) - std::pow(a, dim)) / dim;
        const double i1 = (std::pow(b, dim + 1) - std::pow(a, dim + 1)) / (dim + 1);
        m.mass[e] += (b * i0 - i1) / h;
        m.mass[e + 1] += (i1 - a * i0) / h;
        const double k = i0 / (h * h);
        m.diag[e] += k;
        m.diag[e + 1] += k;
        m.upper[e] -= k;
    }
    m.step_scale.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.step_scale[i] = std::pow(m.mass[i] / m.diag[i], 1.0 / params.sigma);
    return m;
}

FemMatrices assemble(const MediumParams& params, const Mesh1D& mesh) {
    if (mesh.kind() != ElementKind::linear) throw DomainError("evolution uses linear elements");
    return assemble(params, mesh.vertices());
}

std::vector<double> rhs(const MediumParams& params, const std::vector<double>& u, const FemMatrices& mats,
                        const std::vector<char>* frozen) {
    const std::size_t n = u.size();
    const double s = params.sigma, b = params.beta;
    std::vector<double> g(n, 0.0), q(n, 0.0), r(n);
    const int si = integer_exponent(s + 1.0), bi = integer_exponent(b);
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] <= 0.0) continue;
        const double lu = (si < 0 || bi < 0) ? std::log(u[i]) : 0.0;
        g[i] = (si >= 0 ? ipow(u[i], si) : std::exp((s + 1.0) * lu)) / (s + 1.0);
        q[i] = bi >= 0 ? ipow(u[i], bi) : std::exp(b * lu);
    }
    for (std::size_t i = 0; i < n; ++i) {
        double kg = mats.diag[i] * g[i];
        if (i > 0) kg += mats.upper[i - 1] * g[i - 1];
        if (i + 1 < n) kg += mats.upper[i] * g[i + 1];
        r[i] = -kg / mats.mass[i] + q[i];
        if (!std::isfinite(r[i])) throw OverflowError("nonlinear terms overflow, blow-up is imminent");
    }
    r[n - 1] = 0.0;
    if (frozen)
        for (std::size_t i = 0; i < n; ++i)
            if ((*frozen)[i]) r[i] = 0.0;
    return r;
}

Adaptation adaptation_for(const MediumParams& params) {
    if (is_s_boundary(params.sigma, params.beta)) return Adaptation::none;
    return params.m() > 0.0 ? Adaptation::refine : Adaptation::stretch;
}

double EvolutionState::u_max() const { return *std::max_element(u.begin(), u.end()); }

EvolutionState initial_state(const MediumParams& params, const Mesh1D& mesh, const std::vector<double>& u0,
                             const EvolveOptions& options) {
    params.validate();
    if (mesh.kind() != ElementKind::linear) throw DomainError("evolution uses linear elements");
    if (u0.size() != mesh.vertices().size()) throw DomainError("initial data size does not match the mesh");
    if (std::any_of(u0.begin(), u0.end(), [](double v) { return !(v >= 0.0) || !std::isfinite(v); }))
        throw DomainError("initial data must be finite and nonnegative");
    EvolutionState s;
    s.x = mesh.vertices();
    s.u = u0;
    s.u.back() = 0.0;
    s.tau = options.tau_initial;
    s.u0_max = s.u_max();
    s.dx0 = mesh.h_max();
    s.established.assign(s.x.size(), 0);
    s.settled_checks.assign(s.x.size(), 0);
    s.last_check = s.u;
    return s;
}

double step_bound(const EvolutionState& st, const FemMatrices& mats, const MediumParams& params,
                  const EvolveOptions& opt) {
    const std::size_t n = st.u.size();
    double bound = std::numeric_limits<double>::infinity();
    std::size_t arg = n;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (st.established[i]) continue;
        double um = st.u[i];
        if (i > 0) um = std::max(um, st.u[i - 1]);
        um = std::max(um, st.u[i + 1]);
        if (um <= 0.0) continue;
        // sigma-th root of m_i / (K_ii um^sigma); one pow per step instead of per node.
        const double key = mats.step_scale[i] / um;
        if (key < bound) {
            bound = key;
            arg = i;
        }
    }
    if (arg < n) bound = std::pow(bound, params.sigma);
    bound *= opt.safety;
    const double umax = st.u_max();
    if (umax > 0.0) bound = std::min(bound, opt.source_limit / std::pow(umax, params.beta - 1.0));
    return bound;
}

StepOutcome step(EvolutionState& st, const FemMatrices& mats, const MediumParams& params,
                 const EvolveOptions& opt) {
    const std::size_t n = st.u.size();
    const std::vector<char>* frozen = &st.established;
    st.tau = std::min({st.tau, step_bound(st, mats, params, opt), std::max(opt.max_time - st.t, 0.0)});
    const double umax = st.u_max();
    std::vector<double> u1(n), un(n);
    while (true) {
        if (st.tau < opt.tau_min) return StepOutcome::exhausted;
        bool ok = true;
        try {
            // Heun's method: the average of two forward Euler stages.
            const std::vector<double> k1 = rhs(params, st.u, mats, frozen);
            for (std::size_t i = 0; i < n; ++i) u1[i] = st.u[i] + st.tau * k1[i];
            const std::vector<double> k2 = rhs(params, u1, mats, frozen);
            for (std::size_t i = 0; i < n; ++i) un[i] = 0.5 * (st.u[i] + u1[i] + st.tau * k2[i]);
        } catch (const OverflowError&) {
            ok = false;
        }
        if (ok) {
            const double lo = *std::min_element(un.begin(), un.end());
            const double hi = *std::max_element(un.begin(), un.end());
            ok = lo >= 0.0 && hi <= (1.0 + opt.growth_limit) * umax && std::isfinite(hi);
        }
        if (ok) break;
        st.tau *= 0.5;
        ++st.rejected;
    }
    st.t += st.tau;
    st.u.swap(un);
    st.u.back() = 0.0;
    st.gamma = st.u_max() / st.u0_max;
    st.tau *= opt.tau_growth;
    ++st.accepted;
    return StepOutcome::accepted;
}

void update_established(EvolutionState& st, const EvolveOptions& opt) {
    for (std::size_t i = 0; i < st.u.size(); ++i) {
        if (st.established[i]) continue;
        const double change = std::abs(st.u[i] - st.last_check[i]) / std::max(1.0, st.u[i]);
        st.settled_checks[i] = change < opt.delta_u ? st.settled_checks[i] + 1 : 0;
        if (st.settled_checks[i] >= opt.established_checks) st.established[i] = 1;
        st.last_check[i] = st.u[i];
    }
}

namespace {

bool element_active(const EvolutionState& st, std::size_t e) {
    return !(st.established[e] && st.established[e + 1]);
}

constexpr double kLawTol = 1e-12;

}  // namespace

bool mesh_law_holds(const EvolutionState& st, const MediumParams& params, const EvolveOptions& opt) {
    const Adaptation kind = adaptation_for(params);
    if (kind == Adaptation::none) return true;
    const double scale = std::pow(st.gamma, params.m());
    for (std::size_t e = 0; e + 1 < st.x.size(); ++e) {
        const double h = st.x[e + 1] - st.x[e];
        if (kind == Adaptation::refine && element_active(st, e) &&
            h * scale > opt.lambda * st.dx0 * (1.0 + kLawTol))
            return false;
        if (kind == Adaptation::stretch && h * scale < st.dx0 / opt.lambda * (1.0 - kLawTol)) return false;
    }
    return true;
}

AdaptEvent adapt_mesh(EvolutionState& st, const MediumParams& params, const EvolveOptions& opt) {
    AdaptEvent ev;
    ev.kind = adaptation_for(params);
    const double scale = std::pow(st.gamma, params.m());
    if (ev.kind == Adaptation::refine) {
        bool split = true;
        while (split) {
            split = false;
            std::vector<double> x, u, last;
            std::vector<char> est;
            std::vector<int> settled;
            for (std::size_t i = 0; i < st.x.size(); ++i) {
                x.push_back(st.x[i]);
                u.push_back(st.u[i]);
                last.push_back(st.last_check[i]);
                est.push_back(st.established[i]);
                settled.push_back(st.settled_checks[i]);
                if (i + 1 == st.x.size()) break;
                const double h = st.x[i + 1] - st.x[i];
                if (element_active(st, i) && h * scale > opt.lambda * st.dx0) {
                    const double um = 0.5 * (st.u[i] + st.u[i + 1]);
                    x.push_back(0.5 * (st.x[i] + st.x[i + 1]));
                    u.push_back(um);
                    last.push_back(um);
                    est.push_back(0);
                    settled.push_back(0);
                    ++ev.inserted;
                    split = true;
                }
            }
            st.x.swap(x);
            st.u.swap(u);
            st.last_check.swap(last);
            st.established.swap(est);
            st.settled_checks.swap(settled);
        }
    } else if (ev.kind == Adaptation::stretch) {
        while (st.x[1] - st.x[0] > 0.0 && (st.x[1] - st.x[0]) * std::pow(st.gamma, params.m()) < st.dx0 / opt.lambda) {
            std::vector<double> x2(st.x.size()), u2(st.u.size());
            for (std::size_t i = 0; i < st.x.size(); ++i) {
                x2[i] = 2.0 * st.x[i];
                u2[i] = interpolate_linear(st.x, st.u, x2[i]);
            }
            u2.back() = 0.0;
            st.x.swap(x2);
            st.u.swap(u2);
            st.last_check = st.u;
            st.gamma = st.u_max() / st.u0_max;
            ++ev.stretches;
        }
    }
    return ev;
}

BlowupEstimate fit_blowup(const std::vector<double>& t, const std::vector<double>& umax, double beta) {
    BlowupEstimate est;
    const std::size_t n = t.size();
    est.fit_points = static_cast<int>(n);
    if (n < 3) return est;
    double st = 0, sy = 0, stt = 0, sty = 0;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::pow(umax[i], -(beta - 1.0));
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double tm = st / n, ym = sy / n;
    const double slope = (sty - n * tm * ym) / (stt - n * tm * tm);
    const double icpt = ym - slope * tm;
    if (!(slope < 0.0)) return est;
    est.fit_t0 = -icpt / slope;
    double sx = 0, sl = 0, sxx = 0, sxl = 0;
    int m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double gap = est.fit_t0 - t[i];
        if (!(gap > 0.0)) continue;
        const double lx = std::log(gap), ly = std::log(umax[i]);
        sx += lx;
        sl += ly;
        sxx += lx * lx;
        sxl += lx * ly;
        ++m;
    }
    if (m < 3) return est;
    const double xm = sx / m, lm = sl / m;
    est.exponent_fit = (sxl - m * xm * lm) / (sxx - m * xm * xm);
    est.valid = true;
    return est;
}

RunResult run_to_blowup(const MediumParams& params, const Mesh1D& mesh, const std::vector<double>& u0,
                        const EvolveOptions& opt, const GridFunction* reference) {
    RunResult res;
    EvolutionState st = initial_state(params, mesh, u0, opt);
    FemMatrices mats = assemble(params, st.x);
    const Adaptation kind = adaptation_for(params);
    std::vector<double> fit_t, fit_u;
    std::size_t next_snapshot = 0;
    std::vector<double> snaps = opt.snapshot_amplitudes;
    std::sort(snaps.begin(), snaps.end());
    res.min_u = *std::min_element(st.u.begin(), st.u.end());

    auto record = [&]() {
        SeriesRecord r;
        r.t = st.t;
        r.umax = st.u_max();
        const SemiWidth sw = semi_width(st.x, st.u);
        r.xs = sw.defined ? sw.value : std::numeric_limits<double>::quiet_NaN();
        r.xf = front_point(st.x, st.u).value;
        r.X = st.domain_edge();
        r.tau = st.tau;
        r.nnodes = static_cast<int>(st.x.size());
        r.gamma = reference ? representation_gamma(st.u, *reference) : st.gamma;
        r.dev = reference ? deviation_norm(ss_representation(st, *reference, params), *reference)
                          : std::numeric_limits<double>::quiet_NaN();
        res.series.push_back(r);
    };
    auto take_snapshots = [&]() {
        const double um = st.u_max();
        while (next_snapshot < snaps.size() && um >= snaps[next_snapshot]) {
            res.snapshots.push_back({st.t, um, {st.x, st.u}});
            ++next_snapshot;
        }
    };

    record();
    take_snapshots();
    if (st.u0_max <= 0.0) {
        // Zero data is an equilibrium.
        st.t = opt.max_time;
        record();
        res.stop_reason = "max_time";
        res.final_state = std::move(st);
        return res;
    }
    while (true) {
        if (st.t >= opt.max_time) {
            res.stop_reason = "max_time";
            break;
        }
        if (st.accepted >= opt.max_steps) {
            res.stop_reason = "max_steps";
            break;
        }
        if (step(st, mats, params, opt) == StepOutcome::exhausted) {
            res.stop_reason = "tau";
            break;
        }
        res.min_u = std::min(res.min_u, *std::min_element(st.u.begin(), st.u.end()));
        if (*std::min_element(st.u.begin(), st.u.end()) < 0.0) ++res.negativity_violations;
        if (kind == Adaptation::refine && st.accepted % opt.check_interval == 0) update_established(st, opt);
        const AdaptEvent ev = adapt_mesh(st, params, opt);
        if (ev.changed()) {
            mats = assemble(params, st.x);
            res.refinements += ev.inserted > 0 ? 1 : 0;
            for (int i = 0; i < ev.stretches; ++i) {
                ++res.stretches;
                res.stretch_umax.push_back(st.u_max());
            }
        }
        ++res.mesh_law_checks;
        if (!mesh_law_holds(st, params, opt)) ++res.mesh_law_violations;
        const double um = st.u_max();
        if (um >= opt.fit_low && um <= opt.fit_high) {
            fit_t.push_back(st.t);
            fit_u.push_back(um);
        }
        take_snapshots();
        if (ev.changed() || st.accepted % opt.record_interval == 0) record();
        if (um >= opt.amplitude_cap) {
            res.stop_reason = "amplitude_cap";
            break;
        }
    }
    if (res.series.back().t != st.t) record();
    res.estimate = fit_blowup(fit_t, fit_u, params.beta);
    res.estimate.t_stop = st.t;
    res.final_state = std::move(st);
    return res;
}

}  // namespace heatwave
