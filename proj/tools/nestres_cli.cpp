#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <map>

using namespace nestres;
using namespace nestres::cli;

int main(int argc, char** argv) {
    CLI::App app{"Resonances and fields of nested elastic resonators"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir = ".";
    int threads = 1;
    bool svg = false;
    app.add_option("--config", config_path, "Config file (key = value with [sections])");
    app.add_option("--preset", preset_name, "Built-in setup")
        ->check(CLI::IsMember(preset_names()));
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--svg", svg, "Also write an SVG heatmap (field)");

    using Command = int (*)(const RunConfig&, const RunOptions&);
    const std::map<std::string, std::pair<std::string, Command>> commands = {
        {"resonances", {"Exact and asymptotic resonances of channels 1 and 2", cmd_resonances}},
        {"scan-det", {"Normalized determinants on a real grid", cmd_scan_det}},
        {"field", {"Displacement field on a square grid", cmd_field}},
        {"asymptotic", {"Leading-order resonances only", cmd_asymptotic}},
        {"enhancement", {"Shear and pressure norms over the resonators on a real grid", cmd_enhancement}},
    };
    for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty() && !preset_name.empty()) throw ConfigError("give either --config or --preset, not both");
        if (!config_path.empty()) cfg = load_config(config_path);
        else if (!preset_name.empty()) cfg = preset(preset_name);
        cfg.validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }

    const RunOptions opts{out_dir, threads, svg};
    for (const auto& [name, entry] : commands) {
        if (!app.got_subcommand(name)) continue;
        try {
            return entry.second(cfg, opts);
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return kConfigError;
        } catch (const NearSingularError& e) {
            std::cerr << "solver error: " << e.what() << "\n";
            return kNonConvergence;
        } catch (const ConvergenceError& e) {
            std::cerr << "solver error: " << e.what() << "\n";
            return kNonConvergence;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 1;
}
