#include "heatwave/selfsim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "heatwave/errors.hpp"
#include "heatwave/exact.hpp"
#include "heatwave/numfmt.hpp"

namespace heatwave {

namespace {

struct Rule {
    std::array<double, 5> s{};
    std::array<double, 5> w{};
    int n = 0;
};

// Gauss-Legendre on [0, 1].
Rule gauss(int points) {
    Rule r;
    r.n = points;
    if (points == 3) {
        const double a = std::sqrt(0.6);
        const std::array<double, 3> x{-a, 0.0, a}, w{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        for (int q = 0; q < 3; ++q) {
            r.s[q] = 0.5 * (x[q] + 1.0);
            r.w[q] = 0.5 * w[q];
        }
    } else {
        const std::array<double, 5> x{-0.9061798459386640, -0.5384693101056831, 0.0,
                                      0.5384693101056831, 0.9061798459386640};
        const std::array<double, 5> w{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                      0.4786286704993665, 0.2369268850561891};
        for (int q = 0; q < 5; ++q) {
            r.s[q] = 0.5 * (x[q] + 1.0);
            r.w[q] = 0.5 * w[q];
        }
    }
    return r;
}

// Shape functions and their s-derivatives on the reference element.
void shape(int degree, double s, std::array<double, 3>& phi, std::array<double, 3>& dphi) {
    if (degree == 1) {
        phi = {1.0 - s, s, 0.0};
        dphi = {-1.0, 1.0, 0.0};
    } else {
        phi = {2.0 * (s - 0.5) * (s - 1.0), 4.0 * s * (1.0 - s), 2.0 * s * (s - 0.5)};
        dphi = {4.0 * s - 3.0, 4.0 - 8.0 * s, 4.0 * s - 1.0};
    }
}

double odd_power(double v, double e) { return std::pow(std::abs(v), e) * (v < 0.0 ? -1.0 : 1.0); }

}  // namespace

BoundaryKind default_boundary(const MediumParams& p) {
    if (p.beta > p.sigma + 1.0 && !is_s_boundary(p.sigma, p.beta)) return BoundaryKind::robin_tail;
    return BoundaryKind::dirichlet_zero;
}

Scheme default_scheme(const MediumParams& p) {
    return p.m_hat() < 0.0 && !is_s_boundary(p.sigma, p.beta) ? Scheme::monotone : Scheme::galerkin;
}

SelfSimOperator::SelfSimOperator(const MediumParams& params, const Mesh1D& mesh, BoundaryKind bc,
                                 Scheme scheme)
    : params_(params), bc_(bc), scheme_(scheme), xi_(mesh.dof_coordinates()),
      stiff_(mesh.num_dofs(), mesh.degree(), mesh.degree()),
      linear_(mesh.num_dofs(), mesh.degree(), mesh.degree()),
      source_(mesh.num_dofs(), mesh.degree(), mesh.degree()) {
    params_.validate();
    if (scheme == Scheme::monotone && mesh.kind() != ElementKind::linear)
        throw DomainError("the monotone scheme is defined for linear elements only");
    const int d = mesh.degree();
    const int n = mesh.num_dofs();
    const Rule rule = gauss(d == 1 ? 3 : 5);
    const double mh = params_.m_hat(), c = params_.c();
    const auto& v = mesh.vertices();
    BandedMatrix mass(n, d, d), conv(n, d, d);
    std::array<double, 3> phi{}, dphi{};
    for (int e = 0; e < mesh.num_elements(); ++e) {
        const double x0 = v[e], h = v[e + 1] - v[e];
        for (int q = 0; q < rule.n; ++q) {
            const double x = x0 + h * rule.s[q];
            const double wq = rule.w[q] * h * std::pow(x, params_.dim - 1);
            shape(d, rule.s[q], phi, dphi);
            for (int a = 0; a <= d; ++a) {
                for (int b = 0; b <= d; ++b) {
                    const int i = e * d + a, j = e * d + b;
                    stiff_.add(i, j, wq * dphi[b] * dphi[a] / (h * h));
                    mass.add(i, j, wq * phi[b] * phi[a]);
                    conv.add(i, j, wq * mh * x * dphi[b] / h * phi[a]);
                }
            }
        }
    }
    w_.assign(n, 0.0);
    if (d == 1) {
        for (int i = 0; i < n; ++i)
            for (int j = std::max(0, i - 1); j <= std::min(n - 1, i + 1); ++j) w_[i] += mass.get(i, j);
    } else {
        // Row sums of the P2 mass vanish or turn negative at vertices once the weight is
        // x^{N-1}, so the norm uses the measure of the dual cell around each dof instead.
        const double N = params_.dim;
        for (int i = 0; i < n; ++i) {
            const double a = i == 0 ? 0.0 : 0.5 * (xi_[i - 1] + xi_[i]);
            const double b = i == n - 1 ? xi_[i] : 0.5 * (xi_[i] + xi_[i + 1]);
            w_[i] = (std::pow(b, N) - std::pow(a, N)) / N;
        }
    }
    for (double wi : w_) w_total_ += wi;

    if (scheme_ == Scheme::galerkin) {
        for (int i = 0; i < n; ++i)
            for (int j = std::max(0, i - d); j <= std::min(n - 1, i + d); ++j) {
                linear_.set(i, j, conv.get(i, j) + c * mass.get(i, j));
                source_.set(i, j, mass.get(i, j));
            }
    } else {
        for (int i = 0; i < n; ++i) {
            const double vel = mh * xi_[i];
            linear_.add(i, i, c * w_[i]);
            source_.set(i, i, w_[i]);
            const bool forward = vel < 0.0 && i + 1 < n;
            if (forward) {
                const double f = w_[i] * vel / (xi_[i + 1] - xi_[i]);
                linear_.add(i, i + 1, f);
                linear_.add(i, i, -f);
            } else if (i > 0) {
                const double f = w_[i] * vel / (xi_[i] - xi_[i - 1]);
                linear_.add(i, i, f);
                linear_.add(i, i - 1, -f);
            }
        }
    }
    if (bc_ == BoundaryKind::robin_tail) {
        const double l = xi_.back();
        robin_coeff_ = std::pow(l, params_.dim - 2) * ls_tail_exponent(params_);
    }
}

std::vector<double> SelfSimOperator::residual(const std::vector<double>& theta) const {
    const int n = static_cast<int>(xi_.size());
    if (static_cast<int>(theta.size()) != n) throw DomainError("theta size does not match the mesh");
    const double s = params_.sigma, b = params_.beta;
    std::vector<double> g(n), q(n);
    for (int i = 0; i < n; ++i) {
        g[i] = odd_power(theta[i], s + 1.0) / (s + 1.0);
        q[i] = odd_power(theta[i], b);
    }
    std::vector<double> r = stiff_.multiply(g);
    const std::vector<double> lin = linear_.multiply(theta);
    const std::vector<double> src = source_.multiply(q);
    for (int i = 0; i < n; ++i) r[i] += lin[i] - src[i];
    if (bc_ == BoundaryKind::robin_tail) r[n - 1] += robin_coeff_ * odd_power(theta[n - 1], s + 1.0);
    if (bc_ == BoundaryKind::dirichlet_zero) r[n - 1] = theta[n - 1];
    return r;
}

double SelfSimOperator::norm(const std::vector<double>& r) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += r[i] * r[i] / w_[i];
    return std::sqrt(acc / w_total_);
}

BandedMatrix SelfSimOperator::jacobian(const std::vector<double>& theta, double floor,
                                       int* floor_hits) const {
    const int n = static_cast<int>(xi_.size());
    const int d = stiff_.lower();
    const double s = params_.sigma, b = params_.beta;
    std::vector<double> diff(n), react(n);
    int hits = 0;
    for (int j = 0; j < n; ++j) {
        const double a = std::abs(theta[j]);
        if (a < floor) ++hits;
        const double t = std::max(a, floor);
        diff[j] = std::pow(t, s);
        react[j] = b * std::pow(t, b - 1.0);
    }
    if (floor_hits) *floor_hits = hits;
    BandedMatrix jac(n, d, d);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - d); j <= std::min(n - 1, i + d); ++j)
            jac.set(i, j, stiff_.get(i, j) * diff[j] + linear_.get(i, j) - source_.get(i, j) * react[j]);
    if (bc_ == BoundaryKind::robin_tail) jac.add(n - 1, n - 1, robin_coeff_ * (s + 1.0) * diff[n - 1]);
    if (bc_ == BoundaryKind::dirichlet_zero) {
        jac.zero_row(n - 1);
        jac.set(n - 1, n - 1, 1.0);
    }
    return jac;
}

Residual residual(const MediumParams& params, const Mesh1D& mesh, const std::vector<double>& theta,
                  std::optional<BoundaryKind> bc, std::optional<Scheme> scheme) {
    SelfSimOperator op(params, mesh, bc.value_or(default_boundary(params)),
                       scheme.value_or(default_scheme(params)));
    Residual r;
    r.vector = op.residual(theta);
    r.norm = op.norm(r.vector);
    return r;
}

BandedMatrix linearized_apply(const MediumParams& params, const Mesh1D& mesh,
                              const std::vector<double>& theta, std::optional<BoundaryKind> bc,
                              std::optional<Scheme> scheme) {
    SelfSimOperator op(params, mesh, bc.value_or(default_boundary(params)),
                       scheme.value_or(default_scheme(params)));
    return op.jacobian(theta);
}

bool SelfSimilarSolution::monotone_residuals() const {
    return std::all_of(steps.begin(), steps.end(),
                       [](const NewtonStep& s) { return s.residual_after < s.residual_before; });
}

SelfSimilarSolution canm_solve(const MediumParams& params, int k, const std::vector<double>& guess,
                               const Mesh1D& mesh, const SelfSimOptions& opt) {
    params.validate();
    const BoundaryKind bc = opt.boundary.value_or(default_boundary(params));
    const Scheme scheme = opt.scheme.value_or(default_scheme(params));
    SelfSimOperator op(params, mesh, bc, scheme);
    if (guess.size() != op.xi().size()) throw DomainError("guess size does not match the mesh");
    if (std::any_of(guess.begin(), guess.end(), [](double v) { return !(v >= 0.0); }))
        throw DomainError("guess must be nonnegative");

    SelfSimilarSolution sol;
    sol.params = params;
    sol.k = k;
    sol.mesh = mesh;
    sol.boundary = bc;
    sol.scheme = scheme;
    sol.xi = op.xi();

    std::vector<double> theta = guess;
    std::vector<double> r = op.residual(theta);
    double rn = op.norm(r);
    double tau = opt.tau0;
    int growth = 0;
    const std::size_t n = theta.size();
    while (rn >= opt.tol) {
        if (sol.iterations >= opt.max_iter)
            throw ConvergenceError("CANM did not reach " + format_double(opt.tol) + " in " +
                                   std::to_string(opt.max_iter) + " iterations (residual " +
                                   format_double(rn) + ")");
        int hits = 0;
        const BandedMatrix jac = op.jacobian(theta, opt.degeneracy_floor, &hits);
        sol.floor_hits += hits;
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = -r[i];
        std::vector<double> v = jac.solve(std::move(rhs));

        std::vector<double> trial(n), rt;
        double rtn = 0.0;
        for (int halving = 0;; ++halving) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = theta[i] + tau * v[i];
            rt = op.residual(trial);
            rtn = op.norm(rt);
            if (rtn < rn || halving == opt.max_halvings || !std::isfinite(rtn)) break;
            tau *= 0.5;
        }
        if (!std::isfinite(rtn)) throw DivergenceError("CANM residual is not finite");
        growth = rtn < rn ? 0 : growth + 1;
        sol.steps.push_back({tau, std::move(v), rn, rtn});
        ++sol.iterations;
        if (growth >= opt.divergence_window)
            throw DivergenceError("CANM residual grew in " + std::to_string(growth) +
                                  " consecutive iterations");
        const double previous = rn;
        theta = std::move(trial);
        r = std::move(rt);
        rn = rtn;
        tau = std::clamp(tau * previous / rn, 1e-12, 1.0);
    }
    sol.residual_norm = rn;

    const double top = *std::max_element(theta.begin(), theta.end());
    const double bottom = *std::min_element(theta.begin(), theta.end());
    if (top > opt.envelope * theta_H(params))
        throw DivergenceError("converged profile exceeds " + format_double(opt.envelope) + " theta_H");
    if (bottom < -opt.clamp_tol * std::max(top, 0.0))
        throw DivergenceError("converged profile undershoots to " + format_double(bottom));
    sol.clamped_min = std::min(bottom, 0.0);
    for (double& t : theta) t = std::max(t, 0.0);
    sol.theta = std::move(theta);
    return sol;
}

SelfSimilarSolution canm_solve(const MediumParams& params, const LinearApproximation& guess,
                               const Mesh1D& mesh, const SelfSimOptions& options) {
    return canm_solve(params, guess.k, guess.values, mesh, options);
}

SelfSimilarSolution solve_structure(const MediumParams& params, int k, double h, ElementKind kind,
                                    const SelfSimOptions& options, std::optional<double> truncation) {
    if (!(h > 0.0)) throw DomainError("mesh spacing must be positive");
    const double l = truncation.value_or(suggested_truncation(params, k));
    const int elements = std::max(Mesh1D::kMinElements, static_cast<int>(std::ceil(l / h - 1e-9)));
    const Mesh1D mesh = Mesh1D::uniform(l, elements, kind);
    return canm_solve(params, build_guess(params, k, mesh), mesh, options);
}

ConvergenceStudy convergence_study(const MediumParams& params, int k, const std::vector<Mesh1D>& meshes,
                                   const StudyInputs& in, const SelfSimOptions& options) {
    if (meshes.size() < 3) throw DomainError("convergence study needs at least 3 meshes");
    std::vector<SelfSimilarSolution> sols;
    for (const Mesh1D& mesh : meshes) {
        std::vector<double> guess;
        if (in.guess) {
            for (double x : mesh.dof_coordinates()) guess.push_back(in.guess(x));
        } else {
            guess = build_guess(params, k, mesh).values;
        }
        sols.push_back(canm_solve(params, k, guess, mesh, options));
    }
    ConvergenceStudy st;
    st.against_exact = static_cast<bool>(in.exact);
    const std::size_t count = st.against_exact ? sols.size() : sols.size() - 1;
    const SelfSimilarSolution& finest = sols.back();
    for (std::size_t m = 0; m < count; ++m) {
        const auto& s = sols[m];
        double err = 0.0;
        for (std::size_t i = 0; i < s.xi.size(); ++i) {
            if (in.error_radius > 0.0 && s.xi[i] > in.error_radius) continue;
            const double ref = st.against_exact ? in.exact(s.xi[i])
                                                : interpolate_linear(finest.xi, finest.theta, s.xi[i]);
            err = std::max(err, std::abs(s.theta[i] - ref));
        }
        st.h.push_back(s.mesh.h_max());
        st.errors.push_back(err);
        st.iterations.push_back(s.iterations);
    }
    if (!st.against_exact) st.iterations.push_back(finest.iterations);
    st.conclusive = true;
    for (std::size_t m = 0; m + 1 < st.errors.size(); ++m) {
        if (!(st.errors[m + 1] < st.errors[m])) st.conclusive = false;
        st.orders.push_back(std::log(st.errors[m] / st.errors[m + 1]) / std::log(st.h[m] / st.h[m + 1]));
    }
    st.observed_order = st.orders.empty() ? 0.0 : st.orders.back();
    return st;
}

}  // namespace heatwave
