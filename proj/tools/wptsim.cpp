// Command-line front end: simulate | freq-sweep | sweep | heatmap | optimize | compare.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wpt/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Five-coil magnetic-resonant wireless power transfer simulator"};
    app.require_subcommand(1);

    wpt::RunOptions options;
    std::string config_path;
    std::string preset;

    const char* names[] = {"simulate", "freq-sweep", "sweep", "heatmap", "optimize", "compare"};
    const char* descriptions[] = {
        "Single-point |S21| and element table on standard output",
        "S21 spectrum CSV over the configured frequency grid",
        "|S21| vs IC location CSV for the configured IC size",
        "|S21| grid CSV over IC size x location",
        "Per-OD optimum report CSV (equal-coupling and max-|S21| locations)",
        "Residuals CSV of simulated optima against measured data",
    };
    for (int i = 0; i < 6; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--config", config_path, "Configuration file path");
        sub->add_option("--preset", preset, "Built-in configuration: symmetric | asymmetric");
        sub->add_option("--out", options.out_dir, "Output directory (default '.')");
        sub->add_option("--threads", options.threads, "Worker threads for grid evaluation");
        sub->add_flag("--zero-coupling", options.zero_coupling,
                      "Diagnostic: force all mutual couplings to zero");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // CLI11 exits 0 for --help; anything else is a usage problem.
        return code == 0 ? 0 : static_cast<int>(wpt::ExitCode::kConfigError);
    }

    options.subcommand = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) options.config_path = config_path;
    if (!preset.empty()) options.preset = preset;

    return static_cast<int>(wpt::run_subcommand(options, std::cout, std::cerr));
}
