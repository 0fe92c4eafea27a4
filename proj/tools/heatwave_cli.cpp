#include <iostream>

#include "CLI11.hpp"
#include "heatwave/config.hpp"
#include "heatwave/errors.hpp"
#include "heatwave/scenarios.hpp"

int main(int argc, char** argv) {
    using namespace heatwave;
    CLI::App app{"Self-similar blow-up structures of the quasilinear heat equation with a power source"};
    app.require_subcommand(1);

    std::string config_path, output, name;
    auto* run = app.add_subcommand("run", "Run the scenario described by a key = value config file");
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("-o,--output", output, "Output directory (overrides the config's output key)");

    auto* rep = app.add_subcommand("reproduce", "Run a canned scenario");
    rep->add_option("name", name, "fig1, fig2, fig3, fig4, s_localization, ls_stability or hs_wave")->required();
    rep->add_option("-o,--output", output, "Output root; files go to <root>/<name>")->default_val("out");

    auto* list = app.add_subcommand("list", "List canned scenarios");
    auto* show = app.add_subcommand("show", "Print the pinned config of a canned scenario");
    show->add_option("name", name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*list) {
            for (const auto& n : reproduce_names()) std::cout << n << '\n';
            return kExitOk;
        }
        if (*show) {
            std::cout << pinned_config(name);
            return kExitOk;
        }
        ScenarioResult r;
        if (*run) {
            ExperimentConfig c = load_config(config_path);
            if (!output.empty()) c.output = output;
            r = run_scenario(c, c.output);
        } else {
            r = reproduce(name, output);
        }
        std::cout << r.summary_json << '\n';
        if (r.exit_code != kExitOk) std::cerr << "heatwave: run failed with exit code " << r.exit_code << '\n';
        return r.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "heatwave: " << e.what() << '\n';
        return exit_code_for(e);
    }
}
