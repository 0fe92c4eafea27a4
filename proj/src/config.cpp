#include "heatwave/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "heatwave/errors.hpp"
#include "heatwave/numfmt.hpp"

namespace heatwave {

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::classify: return "classify";
        case ScenarioKind::selfsim: return "selfsim";
        case ScenarioKind::evolve: return "evolve";
        case ScenarioKind::stability: return "stability";
        case ScenarioKind::convergence: return "convergence";
    }
    return "?";
}

MediumParams ExperimentConfig::params(int dim) const {
    try {
        return MediumParams::make(sigma, beta, dim, t0);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty item in list '" + v + "'");
        out.push_back(item);
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

double number(const std::string& key, const std::string& v) {
    try {
        const double d = parse_double(v);
        if (!std::isfinite(d)) throw ConfigError("");
        return d;
    } catch (const ConfigError&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a finite number");
    }
}

int integer(const std::string& key, const std::string& v) {
    const double d = number(key, v);
    if (d != std::floor(d) || std::abs(d) > 1e9) throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
    return static_cast<int>(d);
}

std::vector<double> numbers(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& item : split_list(v)) out.push_back(number(key, item));
    return out;
}

std::vector<int> integers(const std::string& key, const std::string& v) {
    std::vector<int> out;
    for (const auto& item : split_list(v)) out.push_back(integer(key, item));
    return out;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string v = trim(line.substr(eq + 1));
        if (v.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key '" + key + "' has no value");
        if (!seen.insert(key).second) throw ConfigError("key '" + key + "' given twice");

        if (key == "scenario") {
            if (v == "classify") c.scenario = ScenarioKind::classify;
            else if (v == "selfsim") c.scenario = ScenarioKind::selfsim;
            else if (v == "evolve") c.scenario = ScenarioKind::evolve;
            else if (v == "stability") c.scenario = ScenarioKind::stability;
            else if (v == "convergence") c.scenario = ScenarioKind::convergence;
            else throw ConfigError("unknown scenario '" + v + "'");
        } else if (key == "sigma") c.sigma = number(key, v);
        else if (key == "beta") c.beta = number(key, v);
        else if (key == "dim") c.dims = integers(key, v);
        else if (key == "t0") c.t0 = number(key, v);
        else if (key == "k") c.k = integers(key, v);
        else if (key == "element") {
            if (v == "linear") c.element = ElementKind::linear;
            else if (v == "quadratic") c.element = ElementKind::quadratic;
            else throw ConfigError("element must be linear or quadratic, got '" + v + "'");
        } else if (key == "h") c.h = number(key, v);
        else if (key == "l") c.truncation = number(key, v);
        else if (key == "initial") {
            if (v != "selfsim" && v != "zk") throw ConfigError("initial must be selfsim or zk, got '" + v + "'");
            c.initial = v;
        } else if (key == "evolve_h") c.evolve_h = number(key, v);
        else if (key == "amplitude_cap") c.amplitude_cap = number(key, v);
        else if (key == "lambda") c.lambda = number(key, v);
        else if (key == "delta_u") c.delta_u = number(key, v);
        else if (key == "safety") c.safety = number(key, v);
        else if (key == "max_time") c.max_time = number(key, v);
        else if (key == "record_interval") c.record_interval = integer(key, v);
        else if (key == "snapshots") c.snapshots = numbers(key, v);
        else if (key == "factors") c.factors = numbers(key, v);
        else if (key == "widen") c.widen = number(key, v);
        else if (key == "eps1") c.eps1 = number(key, v);
        else if (key == "gamma_hold") c.gamma_hold = number(key, v);
        else if (key == "gamma_target") c.gamma_target = number(key, v);
        else if (key == "levels") c.levels = integer(key, v);
        else if (key == "error_radius") c.error_radius = number(key, v);
        else if (key == "output") c.output = v;
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const ExperimentConfig& c) {
    require(c.sigma > 0.0, "sigma must be positive, got " + format_double(c.sigma));
    require(c.beta > 1.0, "beta must exceed 1, got " + format_double(c.beta));
    for (int d : c.dims) require(d >= 1, "dim must be at least 1, got " + std::to_string(d));
    if (c.t0) require(*c.t0 > 0.0, "t0 must be positive, got " + format_double(*c.t0));
    for (int k : c.k) require(k >= 1, "k must be at least 1, got " + std::to_string(k));
    require(c.h > 0.0, "h must be positive");
    if (c.truncation) require(*c.truncation > 0.0, "l must be positive");
    require(c.evolve_h > 0.0, "evolve_h must be positive");
    require(c.amplitude_cap > 1.0, "amplitude_cap must exceed 1");
    require(c.lambda > 1.0, "lambda must exceed 1");
    require(c.delta_u > 0.0, "delta_u must be positive");
    require(c.safety > 0.0 && c.safety <= 1.0, "safety must lie in (0, 1]");
    require(c.max_time > 0.0, "max_time must be positive");
    require(c.record_interval >= 1, "record_interval must be at least 1");
    for (double s : c.snapshots) require(s > 0.0, "snapshot amplitudes must be positive");
    for (double f : c.factors) require(f > 0.0, "perturbation factors must be positive");
    require(c.widen > -1.0, "widen must exceed -1");
    require(c.eps1 > 0.0, "eps1 must be positive");
    require(c.gamma_hold >= 1.0, "gamma_hold must be at least 1");
    require(c.gamma_target >= 10.0, "gamma_target must be at least 10");
    require(c.levels >= 3, "levels must be at least 3");
    if (c.error_radius) require(*c.error_radius > 0.0, "error_radius must be positive");

    const bool multi_dim = c.dims.size() > 1;
    require(!multi_dim || c.scenario == ScenarioKind::selfsim || c.scenario == ScenarioKind::classify,
            "a list of dims is accepted by classify and selfsim only");
    for (int d : c.dims) {
        const MediumParams p = c.params(d);
        const Regime r = classify(p);
        const bool finite_front = r.kind == RegimeKind::S || r.kind == RegimeKind::HS;
        const bool s_line = r.kind == RegimeKind::S && d == 1;
        if (c.scenario == ScenarioKind::classify) continue;
        for (int k : c.k) {
            if (finite_front && !s_line)
                require(k == 1, "k > 1 needs LS, or the S regime with N = 1");
            if (r.kind == RegimeKind::LS && d == 1) {
                const int count = solution_count(p).refined;
                require(k <= count, "k = " + std::to_string(k) + " exceeds the solution count " +
                                        std::to_string(count));
            }
        }
        if (c.scenario == ScenarioKind::evolve || c.scenario == ScenarioKind::stability) {
            require(c.k.size() == 1, "evolve and stability take a single k");
            if (c.initial == "zk") require(s_line, "initial = zk needs N = 1 and beta = sigma + 1");
        }
        if (c.scenario == ScenarioKind::stability)
            require(r.kind != RegimeKind::S || d != 1 || c.initial == "selfsim", "stability uses selfsim data");
        if (c.element == ElementKind::quadratic)
            require(r.kind != RegimeKind::HS, "quadratic elements are not available for the HS scheme");
        if (c.scenario == ScenarioKind::convergence) require(c.k.size() == 1, "convergence takes a single k");
    }
}

}  // namespace heatwave
