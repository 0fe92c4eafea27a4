#pragma once

#include <optional>
#include <string>

namespace heatwave {

/// Medium of u_t = x^{1-N}(x^{N-1} u^sigma u_x)_x + u^beta.
struct MediumParams {
    double sigma = 2.0;
    double beta = 3.0;
    int dim = 1;
    double t0 = 0.5;

    /// Builds and validates; t0 defaults to 1/(beta-1) so that theta_H = 1.
    static MediumParams make(double sigma, double beta, int dim,
                             std::optional<double> t0 = std::nullopt);

    void validate() const;

    double m() const { return (beta - sigma - 1.0) / 2.0; }
    /// Convection coefficient of the self-similar operator, m/((beta-1) T0).
    double m_hat() const { return (beta - sigma - 1.0) / (2.0 * (beta - 1.0) * t0); }
    /// Zero-order coefficient of the self-similar operator.
    double c() const { return 1.0 / ((beta - 1.0) * t0); }
    double beta_f() const { return sigma + 1.0 + 2.0 / dim; }
};

enum class RegimeKind { HS, S, LS, BeyondFujita };

struct Regime {
    RegimeKind kind = RegimeKind::S;
    std::optional<bool> beyond_sobolev;  // N >= 3
    std::optional<bool> beyond_u;        // N >= 11
    std::optional<bool> beyond_p;        // N >= 11
};

std::string to_string(RegimeKind kind);

bool is_s_boundary(double sigma, double beta);

Regime classify(const MediumParams& params);

std::optional<double> beta_sobolev(const MediumParams& params);
std::optional<double> beta_u(const MediumParams& params);
std::optional<double> beta_p(const MediumParams& params);

struct SolutionCount {
    int count = 0;          // ceil(a) - 1
    int refined = 0;        // floor(a), or a-1 for integer a
    bool differ = false;
    double a = 0.0;         // (beta-1)/(beta-sigma-1)
};

/// Number of self-similar structures in the LS regime for N = 1.
SolutionCount solution_count(const MediumParams& params);

double theta_H(const MediumParams& params);

struct Scaling {
    double phi = 1.0;
    double psi = 1.0;
};

/// Amplitude and width factors of the separable solution phi(t) theta(x/psi(t)).
Scaling scaling_laws(const MediumParams& params, double t);

}  // namespace heatwave
