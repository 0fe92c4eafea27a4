#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "heatwave/banded.hpp"
#include "heatwave/linear_init.hpp"
#include "heatwave/medium.hpp"
#include "heatwave/mesh.hpp"

namespace heatwave {

/// Condition at the truncation point xi = l.
enum class BoundaryKind {
    dirichlet_zero,  // theta(l) = 0
    robin_tail,      // theta' = -p theta / xi from the LS power tail
    natural,         // zero flux
};

/// galerkin: consistent weak form. monotone: lumped zero-order terms and upwind
/// nodal convection (linear elements only), used where the convection points inward.
enum class Scheme { galerkin, monotone };

BoundaryKind default_boundary(const MediumParams& params);
Scheme default_scheme(const MediumParams& params);

struct SelfSimOptions {
    double tol = 1e-7;
    int max_iter = 60;
    double tau0 = 0.1;
    int max_halvings = 5;
    int divergence_window = 5;
    double degeneracy_floor = 1e-14;
    /// Converged values below -clamp_tol * max(theta) are an error; milder undershoot is clamped to 0.
    double clamp_tol = 5e-3;
    /// theta above envelope * theta_H signals divergence.
    double envelope = 10.0;
    std::optional<BoundaryKind> boundary;
    std::optional<Scheme> scheme;
};

/// Discrete operator L(theta) of the self-similar problem on a fixed mesh.
class SelfSimOperator {
public:
    SelfSimOperator(const MediumParams& params, const Mesh1D& mesh, BoundaryKind bc, Scheme scheme);

    const std::vector<double>& xi() const { return xi_; }
    /// Nodal weights of the residual norm: lumped mass for P1, dual-cell measure for P2.
    const std::vector<double>& norm_weights() const { return w_; }
    BoundaryKind boundary() const { return bc_; }
    Scheme scheme() const { return scheme_; }

    std::vector<double> residual(const std::vector<double>& theta) const;
    /// Weighted norm sqrt(sum R_i^2 / w_i / sum w_i).
    double norm(const std::vector<double>& r) const;
    /// Jacobian of residual; floor_hits counts nodes clamped to the degeneracy floor.
    BandedMatrix jacobian(const std::vector<double>& theta, double floor = 1e-14,
                          int* floor_hits = nullptr) const;

private:
    MediumParams params_;
    BoundaryKind bc_;
    Scheme scheme_;
    std::vector<double> xi_, w_;
    double w_total_ = 0.0;
    double robin_coeff_ = 0.0;
    BandedMatrix stiff_;     // K
    BandedMatrix linear_;    // convection + c * mass
    BandedMatrix source_;    // mass applied to theta^beta
};

struct Residual {
    std::vector<double> vector;
    double norm = 0.0;
};

Residual residual(const MediumParams& params, const Mesh1D& mesh, const std::vector<double>& theta,
                  std::optional<BoundaryKind> bc = std::nullopt,
                  std::optional<Scheme> scheme = std::nullopt);

BandedMatrix linearized_apply(const MediumParams& params, const Mesh1D& mesh,
                              const std::vector<double>& theta,
                              std::optional<BoundaryKind> bc = std::nullopt,
                              std::optional<Scheme> scheme = std::nullopt);

struct NewtonStep {
    double tau = 0.0;
    std::vector<double> direction;
    double residual_before = 0.0;
    double residual_after = 0.0;
};

struct SelfSimilarSolution {
    MediumParams params;
    int k = 1;
    Mesh1D mesh;
    BoundaryKind boundary = BoundaryKind::dirichlet_zero;
    Scheme scheme = Scheme::galerkin;
    std::vector<double> xi;
    std::vector<double> theta;
    double residual_norm = 0.0;
    int iterations = 0;
    std::vector<NewtonStep> steps;
    double clamped_min = 0.0;  // most negative value before clamping
    int floor_hits = 0;

    bool monotone_residuals() const;
};

/// Damped Newton iteration theta += tau_n v_n with L'(theta) v = -L(theta).
SelfSimilarSolution canm_solve(const MediumParams& params, int k, const std::vector<double>& guess,
                               const Mesh1D& mesh, const SelfSimOptions& options = {});
SelfSimilarSolution canm_solve(const MediumParams& params, const LinearApproximation& guess,
                               const Mesh1D& mesh, const SelfSimOptions& options = {});

/// Guess from build_guess on a mesh of the suggested truncation with the given spacing.
SelfSimilarSolution solve_structure(const MediumParams& params, int k, double h,
                                    ElementKind kind = ElementKind::linear,
                                    const SelfSimOptions& options = {},
                                    std::optional<double> truncation = std::nullopt);

struct ConvergenceStudy {
    std::vector<double> h;
    std::vector<double> errors;
    std::vector<double> orders;      // between consecutive meshes
    std::vector<int> iterations;
    double observed_order = 0.0;     // order over the last pair
    bool conclusive = false;         // errors strictly decreasing
    bool against_exact = false;
};

struct StudyInputs {
    std::function<double(double)> guess;  // defaults to build_guess
    std::function<double(double)> exact;  // absent: compare with the finest mesh
    double error_radius = -1.0;           // compare only xi <= radius when positive
};

ConvergenceStudy convergence_study(const MediumParams& params, int k, const std::vector<Mesh1D>& meshes,
                                   const StudyInputs& inputs = {}, const SelfSimOptions& options = {});

}  // namespace heatwave
