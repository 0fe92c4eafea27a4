#include "heatwave/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "heatwave/diagnostics.hpp"
#include "heatwave/errors.hpp"
#include "heatwave/evolve.hpp"
#include "heatwave/exact.hpp"
#include "heatwave/numfmt.hpp"
#include "heatwave/selfsim.hpp"
#include "json.hpp"

namespace heatwave {

using nlohmann::json;
namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e)) return kExitConfig;
    if (dynamic_cast<const DivergenceError*>(&e) || dynamic_cast<const ConvergenceError*>(&e) ||
        dynamic_cast<const OverflowError*>(&e))
        return kExitDivergence;
    return kExitFailure;
}

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json params_json(const MediumParams& p) {
    return {{"sigma", p.sigma}, {"beta", p.beta}, {"dim", p.dim}, {"t0", p.t0}, {"m", p.m()},
            {"theta_H", theta_H(p)}};
}

struct Writer {
    fs::path dir;
    std::vector<std::pair<fs::path, std::vector<std::string>>> written;

    fs::path csv(const std::string& name, const CsvTable& table) {
        const fs::path path = dir / name;
        write_csv(path, table);
        written.emplace_back(path, table.header);
        return path;
    }
};

CsvTable profile_table(const std::vector<double>& x, const std::vector<double>& v,
                       const std::vector<std::string>& header = kProfileHeader) {
    CsvTable t{header, {}};
    for (std::size_t i = 0; i < x.size(); ++i) t.rows.push_back({x[i], v[i]});
    return t;
}

CsvTable series_table(const std::vector<SeriesRecord>& series) {
    CsvTable t{kSeriesHeader, {}};
    for (const auto& r : series)
        t.rows.push_back({r.t, r.umax, r.xs, r.xf, r.X, r.tau, static_cast<double>(r.nnodes), r.gamma, r.dev});
    return t;
}

SelfSimOptions solver_options() { return {}; }

SelfSimilarSolution solve(const ExperimentConfig& c, const MediumParams& p, int k) {
    return solve_structure(p, k, c.h, c.element, solver_options(), c.truncation);
}

json solution_json(const SelfSimilarSolution& s, const std::string& file) {
    const double top = *std::max_element(s.theta.begin(), s.theta.end());
    return {{"k", s.k},
            {"file", file},
            {"iterations", s.iterations},
            {"residual_norm", s.residual_norm},
            {"monotone_residuals", s.monotone_residuals()},
            {"l", s.xi.back()},
            {"h", s.mesh.h_max()},
            {"element", s.mesh.kind() == ElementKind::linear ? "linear" : "quadratic"},
            {"boundary", s.boundary == BoundaryKind::robin_tail ? "robin_tail" : "dirichlet_zero"},
            {"scheme", s.scheme == Scheme::galerkin ? "galerkin" : "monotone"},
            {"theta0", s.theta.front()},
            {"theta_max", top},
            {"crossings", count_crossings(s.theta, theta_H(s.params))},
            {"clamped_min", s.clamped_min},
            {"degeneracy_floor_hits", s.floor_hits}};
}

void run_classify(const ExperimentConfig& c, json& out) {
    json list = json::array();
    for (int d : c.dims) {
        const MediumParams p = c.params(d);
        const Regime r = classify(p);
        json e{{"params", params_json(p)}, {"regime", to_string(r.kind)}, {"beta_f", p.beta_f()}};
        if (auto v = beta_sobolev(p)) e["beta_s"] = *v;
        if (auto v = beta_u(p)) e["beta_u"] = *v;
        if (auto v = beta_p(p)) e["beta_p"] = *v;
        if (r.beyond_sobolev) e["beyond_sobolev"] = *r.beyond_sobolev;
        if (r.beyond_u) e["beyond_u"] = *r.beyond_u;
        if (r.beyond_p) e["beyond_p"] = *r.beyond_p;
        if (p.beta > p.sigma + 1.0 && r.kind != RegimeKind::S && d == 1) {
            const SolutionCount sc = solution_count(p);
            e["K"] = sc.count;
            e["K_refined"] = sc.refined;
            e["K_counts_differ"] = sc.differ;
            e["a"] = sc.a;
        }
        list.push_back(e);
    }
    out["classification"] = list;
}

void run_selfsim(const ExperimentConfig& c, Writer& w, json& out) {
    json list = json::array();
    for (int d : c.dims) {
        const MediumParams p = c.params(d);
        for (int k : c.k) {
            const SelfSimilarSolution s = solve(c, p, k);
            const std::string name = "profile_N" + std::to_string(d) + "_k" + std::to_string(k) + ".csv";
            w.csv(name, profile_table(s.xi, s.theta));
            json e = solution_json(s, name);
            e["params"] = params_json(p);
            e["regime"] = to_string(classify(p).kind);
            list.push_back(e);
        }
    }
    out["solutions"] = list;
}

struct InitialData {
    GridFunction reference;
    double support = 0.0;
    json info;
};

InitialData initial_data(const ExperimentConfig& c, const MediumParams& p, int k) {
    InitialData d;
    if (c.initial == "zk") {
        const double ls = fundamental_length(p.sigma);
        const Mesh1D m = Mesh1D::uniform(1.5 * k * ls, std::max(8, static_cast<int>(std::lround(1.5 * k * ls / c.evolve_h))));
        d.reference.x = m.vertices();
        for (double x : d.reference.x) d.reference.v.push_back(theta_H(p) * zk_multibump(p.sigma, k, x));
        d.support = k * ls / 2.0;
        d.info = {{"source", "zk"}};
        return d;
    }
    const SelfSimilarSolution s = solve(c, p, k);
    d.reference = {s.xi, s.theta};
    if (default_boundary(p) == BoundaryKind::robin_tail) {
        d.support = s.xi.back();
    } else {
        std::size_t last = 0;
        for (std::size_t i = 0; i < s.theta.size(); ++i)
            if (s.theta[i] > 0.0) last = i;
        d.support = s.xi[std::min(last + 1, s.xi.size() - 1)];
    }
    d.info = solution_json(s, "reference.csv");
    d.info["source"] = "selfsim";
    return d;
}

EvolveOptions evolve_options(const ExperimentConfig& c) {
    EvolveOptions o;
    o.amplitude_cap = c.amplitude_cap;
    o.lambda = c.lambda;
    o.delta_u = c.delta_u;
    o.safety = c.safety;
    o.max_time = c.max_time;
    o.record_interval = c.record_interval;
    o.snapshot_amplitudes = c.snapshots;
    return o;
}

json run_json(const RunResult& r, const MediumParams& p) {
    json stretch = json::array();
    for (double u : r.stretch_umax) stretch.push_back(u);
    const FrontPoint fp = front_point(r.final_state.x, r.final_state.u);
    return {{"stop_reason", r.stop_reason},
            {"t_stop", r.estimate.t_stop},
            {"fit_t0", num(r.estimate.valid ? r.estimate.fit_t0 : NAN)},
            {"expected_t0", p.t0},
            {"exponent_fit", num(r.estimate.valid ? r.estimate.exponent_fit : NAN)},
            {"exponent_expected", -1.0 / (p.beta - 1.0)},
            {"fit_points", r.estimate.fit_points},
            {"accepted_steps", r.final_state.accepted},
            {"rejected_steps", r.final_state.rejected},
            {"final_umax", r.final_state.u_max()},
            {"final_nodes", r.final_state.x.size()},
            {"domain_edge", r.final_state.domain_edge()},
            {"stretches", r.stretches},
            {"stretch_umax", stretch},
            {"refinements", r.refinements},
            {"mesh_law_checks", r.mesh_law_checks},
            {"mesh_law_violations", r.mesh_law_violations},
            {"negativity_violations", r.negativity_violations},
            {"min_u", r.min_u},
            {"support_estimate", {{"front", fp.value}, {"saturated", fp.saturated},
                                  {"note", "support at run end, a proxy for the localization set"}}}};
}

Mesh1D evolve_mesh(const ExperimentConfig& c, double support) {
    const double X = 3.0 * support;
    return Mesh1D::uniform(X, std::max(Mesh1D::kMinElements, static_cast<int>(std::ceil(X / c.evolve_h - 1e-9))));
}

std::vector<double> sample(const GridFunction& f, const std::vector<double>& x, double factor, double widen) {
    std::vector<double> u;
    for (double xi : x) u.push_back(factor * interpolate_linear(f.x, f.v, xi / (1.0 + widen)));
    return u;
}

void run_evolve(const ExperimentConfig& c, Writer& w, json& out) {
    const MediumParams p = c.params(c.dims.front());
    const int k = c.k.front();
    const InitialData init = initial_data(c, p, k);
    w.csv("reference.csv", profile_table(init.reference.x, init.reference.v));
    const Mesh1D mesh = evolve_mesh(c, init.support);
    const RunResult r = run_to_blowup(p, mesh, sample(init.reference, mesh.vertices(), 1.0, 0.0),
                                      evolve_options(c), &init.reference);
    w.csv("series.csv", series_table(r.series));
    json snaps = json::array();
    for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
        const auto& s = r.snapshots[i];
        const std::string name = "snapshot_" + std::to_string(i) + ".csv";
        w.csv(name, profile_table(s.profile.x, s.profile.v, kSnapshotHeader));
        snaps.push_back({{"file", name}, {"t", s.t}, {"umax", s.umax}});
    }
    out["params"] = params_json(p);
    out["regime"] = to_string(classify(p).kind);
    out["initial"] = init.info;
    out["run"] = run_json(r, p);
    out["snapshots"] = snaps;
}

void run_stability(const ExperimentConfig& c, Writer& w, json& out) {
    const MediumParams p = c.params(c.dims.front());
    const int k = c.k.front();
    const InitialData init = initial_data(c, p, k);
    w.csv("reference.csv", profile_table(init.reference.x, init.reference.v));
    const double top = *std::max_element(init.reference.v.begin(), init.reference.v.end());
    EvolveOptions o = evolve_options(c);
    o.amplitude_cap = c.gamma_target * top;
    StabilityThresholds th;
    th.eps1 = c.eps1;
    th.gamma_hold = c.gamma_hold;
    th.growth_required = c.gamma_target;

    struct Case {
        std::string label;
        double factor, widen;
    };
    std::vector<Case> cases;
    for (double f : c.factors) cases.push_back({"factor_" + format_double(f), f, 0.0});
    if (c.widen != 0.0) cases.push_back({"widened_" + format_double(c.widen), 1.0, c.widen});

    json runs = json::array();
    for (const Case& cs : cases) {
        const Mesh1D mesh = evolve_mesh(c, init.support * (1.0 + std::max(cs.widen, 0.0)));
        const RunResult r = run_to_blowup(p, mesh, sample(init.reference, mesh.vertices(), cs.factor, cs.widen), o,
                                          &init.reference);
        const std::string name = "series_" + cs.label + ".csv";
        w.csv(name, series_table(r.series));
        json e{{"label", cs.label}, {"factor", cs.factor}, {"widen", cs.widen}, {"file", name},
               {"run", run_json(r, p)}};
        try {
            const StabilityVerdict v = stability_verdict(r.series, th);
            e["verdict"] = {{"kind", to_string(v.kind)},
                            {"hold_until_gamma", v.hold_until_gamma},
                            {"final_deviation", v.final_deviation},
                            {"gamma_hold_note", "gamma_hold is a proxy for the metastability time scale"}};
        } catch (const DomainError& err) {
            e["verdict"] = {{"kind", "undetermined"}, {"reason", err.what()}};
        }
        runs.push_back(e);
    }
    out["params"] = params_json(p);
    out["regime"] = to_string(classify(p).kind);
    out["initial"] = init.info;
    out["perturbations"] = {{"factors", c.factors}, {"widen", c.widen}, {"random_seed", nullptr}};
    out["thresholds"] = {{"eps1", th.eps1}, {"gamma_hold", th.gamma_hold}, {"gamma_target", c.gamma_target}};
    out["runs"] = runs;
}

void run_convergence(const ExperimentConfig& c, Writer& w, json& out) {
    const MediumParams p = c.params(c.dims.front());
    const int k = c.k.front();
    const double l = c.truncation.value_or(suggested_truncation(p, k));
    const int base = std::max(Mesh1D::kMinElements, static_cast<int>(std::ceil(l / c.h - 1e-9)));
    std::vector<Mesh1D> meshes;
    for (int i = 0; i < c.levels; ++i) meshes.push_back(Mesh1D::uniform(l, base << i, c.element));
    StudyInputs in;
    if (c.error_radius) in.error_radius = *c.error_radius;
    const bool exact = p.dim == 1 && is_s_boundary(p.sigma, p.beta);
    if (exact) {
        const double th = theta_H(p), stretch = std::pow(th, p.m());
        in.exact = [=](double x) { return th * zk_multibump(p.sigma, k, x * stretch); };
    }
    const ConvergenceStudy st = convergence_study(p, k, meshes, in);
    CsvTable t{kConvergenceHeader, {}};
    for (std::size_t i = 0; i < st.errors.size(); ++i) t.rows.push_back({st.h[i], st.errors[i]});
    w.csv("convergence.csv", t);
    out["params"] = params_json(p);
    out["study"] = {{"against_exact", st.against_exact}, {"orders", st.orders},
                    {"observed_order", st.observed_order}, {"conclusive", st.conclusive},
                    {"iterations", st.iterations}, {"l", l},
                    {"error_radius", num(in.error_radius > 0.0 ? in.error_radius : NAN)},
                    {"element", c.element == ElementKind::linear ? "linear" : "quadratic"}};
}

}  // namespace

ScenarioResult run_scenario(const ExperimentConfig& config, const fs::path& out_dir) {
    ScenarioResult res;
    json summary{{"scenario", to_string(config.scenario)}};
    const auto start = std::chrono::steady_clock::now();
    Writer w{out_dir, {}};
    try {
        validate(config);
        fs::create_directories(out_dir);
        switch (config.scenario) {
            case ScenarioKind::classify: run_classify(config, summary); break;
            case ScenarioKind::selfsim: run_selfsim(config, w, summary); break;
            case ScenarioKind::evolve: run_evolve(config, w, summary); break;
            case ScenarioKind::stability: run_stability(config, w, summary); break;
            case ScenarioKind::convergence: run_convergence(config, w, summary); break;
        }
        for (const auto& [path, header] : w.written) validate_csv(path, header);
        summary["status"] = "ok";
    } catch (const std::exception& e) {
        res.exit_code = exit_code_for(e);
        summary["status"] = "error";
        summary["error"] = e.what();
    }
    summary["exit_code"] = res.exit_code;
    summary["timings"] = {{"wall_seconds",
                           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    json files = json::array();
    for (const auto& [path, header] : w.written) {
        res.files.push_back(path);
        files.push_back(path.filename().string());
    }
    summary["files"] = files;
    res.summary_json = summary.dump(2);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!ec) {
        std::ofstream(out_dir / "summary.json") << res.summary_json << '\n';
    }
    return res;
}

const std::vector<std::string>& reproduce_names() {
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4",
                                                "s_localization", "ls_stability", "hs_wave"};
    return names;
}

std::string pinned_config(const std::string& name) {
    static const std::map<std::string, std::string> configs{
        {"fig1", "scenario = selfsim\nsigma = 2\nbeta = 3\ndim = 1,2,3\nk = 1\nh = 0.01\n"},
        {"fig2", "scenario = selfsim\nsigma = 2\nbeta = 2.4\ndim = 1,2,3\nk = 1\nh = 0.01\n"},
        {"fig3", "scenario = selfsim\nsigma = 2\nbeta = 3.6\ndim = 1\nk = 1,2,3,4\nh = 0.025\n"},
        {"fig4", "scenario = selfsim\nsigma = 2\nbeta = 3.6\ndim = 3\nk = 1,2,3,4\nh = 0.025\n"},
        {"s_localization",
         "scenario = evolve\nsigma = 2\nbeta = 3\ndim = 1\ninitial = zk\nevolve_h = 0.0544139809270265\n"
         "amplitude_cap = 1e6\nsnapshots = 10,100,1000,10000,100000\n"},
        {"ls_stability",
         "scenario = stability\nsigma = 2\nbeta = 3.6\ndim = 1\nk = 1\nh = 0.025\nevolve_h = 0.025\n"
         "factors = 0.8,1.2\nwiden = 0.1\ngamma_target = 1000\n"},
        {"hs_wave",
         "scenario = evolve\nsigma = 2\nbeta = 2.4\ndim = 1\nk = 1\nh = 0.02\nevolve_h = 0.02\n"
         "amplitude_cap = 1e4\nsnapshots = 10,100,1000,10000\n"},
    };
    const auto it = configs.find(name);
    if (it == configs.end()) throw ConfigError("unknown reproduce scenario '" + name + "'");
    return it->second;
}

ScenarioResult reproduce(const std::string& name, const fs::path& out_root) {
    ExperimentConfig c;
    try {
        c = parse_config(pinned_config(name));
    } catch (const ConfigError& e) {
        ScenarioResult r;
        r.exit_code = kExitConfig;
        r.summary_json = json{{"scenario", name}, {"status", "error"}, {"error", e.what()}, {"exit_code", kExitConfig}}.dump(2);
        return r;
    }
    ScenarioResult r = run_scenario(c, out_root / name);
    return r;
}

}  // namespace heatwave
