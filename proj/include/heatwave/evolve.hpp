#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatwave/medium.hpp"
#include "heatwave/mesh.hpp"

namespace heatwave {

/// Kirchhoff variable G(u) = u^{sigma+1}/(sigma+1).
double kirchhoff(double u, double sigma);

/// Lumped mass and the tridiagonal weighted stiffness of linear elements on nodes x.
struct FemMatrices {
    std::vector<double> mass;   // row-sum lumped, weight x^{N-1}
    std::vector<double> diag;   // K_ii
    std::vector<double> upper;  // K_{i,i+1}
    std::vector<double> step_scale;  // (mass_i / K_ii)^{1/sigma}
};

FemMatrices assemble(const MediumParams& params, const std::vector<double>& x);
FemMatrices assemble(const MediumParams& params, const Mesh1D& mesh);

/// M^{-1}(-K G(U)) + U^beta with u(X) held at 0; frozen nodes get zero rate.
std::vector<double> rhs(const MediumParams& params, const std::vector<double>& u, const FemMatrices& mats,
                        const std::vector<char>* frozen = nullptr);

enum class Adaptation { none, refine, stretch };

/// refine for m > 0, stretch for m < 0, none in the S regime.
Adaptation adaptation_for(const MediumParams& params);

struct EvolveOptions {
    double amplitude_cap = 1e6;
    double max_time = 1e3;
    long max_steps = 50'000'000;
    double lambda = 2.0;
    double delta_u = 1e-7;
    int established_checks = 3;
    int check_interval = 20;
    double safety = 0.5;
    double growth_limit = 0.1;     // reject when max u grows by more per step
    double tau_growth = 1.2;
    double tau_min = 1e-16;
    double tau_initial = 1e-4;
    double source_limit = 0.05;    // tau <= source_limit / max(u)^{beta-1}
    int record_interval = 10;
    double fit_low = 10.0;
    double fit_high = 1e4;
    std::vector<double> snapshot_amplitudes;
};

struct EvolutionState {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> u;
    double tau = 0.0;
    double gamma = 1.0;        // max u / max u0
    double u0_max = 0.0;
    double dx0 = 0.0;          // initial element length
    std::vector<char> established;
    std::vector<int> settled_checks;
    std::vector<double> last_check;
    long accepted = 0;
    long rejected = 0;

    double domain_edge() const { return x.back(); }
    double u_max() const;
};

EvolutionState initial_state(const MediumParams& params, const Mesh1D& mesh, const std::vector<double>& u0,
                             const EvolveOptions& options = {});

enum class StepOutcome { accepted, exhausted };

/// One two-stage explicit step with accept/reject control; exhausted when tau < tau_min.
StepOutcome step(EvolutionState& state, const FemMatrices& mats, const MediumParams& params,
                 const EvolveOptions& options = {});

/// Step bound from the maximum principle and the source growth rate.
double step_bound(const EvolutionState& state, const FemMatrices& mats, const MediumParams& params,
                  const EvolveOptions& options);

struct AdaptEvent {
    Adaptation kind = Adaptation::none;
    int inserted = 0;
    int stretches = 0;
    bool changed() const { return inserted > 0 || stretches > 0; }
};

/// Keeps dx Gamma^m <= lambda dx0 on non-established elements (refine) or
/// dx Gamma^m >= dx0/lambda by doubling all lengths and X (stretch).
AdaptEvent adapt_mesh(EvolutionState& state, const MediumParams& params, const EvolveOptions& options = {});

/// Marks nodes whose value settled within delta_u over consecutive checks.
void update_established(EvolutionState& state, const EvolveOptions& options);

/// True when the mesh law of the regime holds on the current mesh.
bool mesh_law_holds(const EvolutionState& state, const MediumParams& params, const EvolveOptions& options);

struct SeriesRecord {
    double t = 0.0;
    double umax = 0.0;
    double xs = 0.0;
    double xf = 0.0;
    double X = 0.0;
    double tau = 0.0;
    int nnodes = 0;
    double gamma = 1.0;  // max u / max theta_s with a reference, else max u / max u0
    double dev = 0.0;    // NaN without a reference profile
};

struct Snapshot {
    double t = 0.0;
    double umax = 0.0;
    GridFunction profile;
};

struct BlowupEstimate {
    double t_stop = 0.0;
    double fit_t0 = 0.0;
    double exponent_fit = 0.0;
    int fit_points = 0;
    bool valid = false;
};

struct RunResult {
    std::vector<SeriesRecord> series;
    BlowupEstimate estimate;
    EvolutionState final_state;
    std::string stop_reason;
    int stretches = 0;
    std::vector<double> stretch_umax;
    int refinements = 0;
    long mesh_law_checks = 0;
    long mesh_law_violations = 0;
    long negativity_violations = 0;
    double min_u = 0.0;
    std::vector<Snapshot> snapshots;
};

/// Least-squares fit of max(u)^{-(beta-1)} against t (t-intercept) and of the power-law slope.
BlowupEstimate fit_blowup(const std::vector<double>& t, const std::vector<double>& umax, double beta);

/// Advances until tau < tau_min, max u >= amplitude_cap, or max_time.
/// reference enables the deviation column of the series.
RunResult run_to_blowup(const MediumParams& params, const Mesh1D& mesh, const std::vector<double>& u0,
                        const EvolveOptions& options = {}, const GridFunction* reference = nullptr);

}  // namespace heatwave
