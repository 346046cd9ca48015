#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "wpt/config.hpp"

namespace wpt {

// Process exit codes. Config problems (including bad CLI usage), numerical
// failures, and I/O failures are distinguishable.
enum class ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kNumericalError = 3,
    kIoError = 4,
};

struct RunOptions {
    std::string subcommand;  // simulate | freq-sweep | sweep | heatmap | optimize | compare
    std::optional<std::string> config_path;
    std::optional<std::string> preset;  // symmetric | asymmetric
    std::string out_dir = ".";
    int threads = 1;
    bool zero_coupling = false;  // diagnostic: force all mutual couplings to zero
};

// Loads the configuration (preset and/or file), dispatches the subcommand
// and writes its outputs. Diagnostics go to `err`, results to `out`.
ExitCode run_subcommand(const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace wpt
