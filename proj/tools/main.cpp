// ring-carl: thresholds, mean-field sweeps and N-particle simulations of
// collective backscattering in a pumped ring cavity. All physics lives in
// the core library; this is argument handling only.

#include <cstring>
#include <iostream>
#include <string>

#include "ringcarl/runner.hpp"

namespace {

const char* usage =
    "usage: ring-carl <command> [--config <file>] [--out <path>] [--jobs N]\n"
    "                 [--seed S] [--<key> <value> ...]\n"
    "\n"
    "commands:\n"
    "  threshold   analytic self-organization threshold over a delta_c or v grid\n"
    "  meanfield   self-consistent density sweep over (delta_c, eta), CSV + JSON summary\n"
    "  simulate    N-particle + two-mode time series\n"
    "  sweep-sim   one simulation per (delta_c, eta) grid cell\n"
    "\n"
    "Every configuration key can be set in the config file (key = value, '#'\n"
    "comments) or overridden with --key value. Unknown keys are errors.\n"
    "Exit codes: 0 ok, 2 configuration error, 3 collective-resonance\n"
    "singularity, 4 nonfinite state, 1 anything else.\n";

} // namespace

int main(int argc, char** argv) {
    using namespace ringcarl;

    try {
        if (argc < 2 || std::strcmp(argv[1], "--help") == 0 ||
            std::strcmp(argv[1], "-h") == 0) {
            std::cout << usage;
            return argc < 2 ? static_cast<int>(ExitCode::config_error) : 0;
        }

        RunConfig cfg;
        cfg.command = argv[1];

        // First pass: locate --config so file values load before overrides.
        for (int i = 2; i + 1 < argc; ++i)
            if (std::strcmp(argv[i], "--config") == 0)
                cfg = parse_config_file(argv[i + 1], std::move(cfg));
        cfg.command = argv[1]; // the positional command wins over the file

        for (int i = 2; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg.rfind("--", 0) != 0)
                throw ConfigError("expected --key, got '" + arg + "'");
            if (i + 1 >= argc) throw ConfigError("missing value for '" + arg + "'");
            const std::string key = arg.substr(2);
            const std::string value = argv[++i];
            if (key == "config") continue; // handled above
            apply_override(cfg, key, value);
        }

        runner::run_command(cfg);
        return static_cast<int>(ExitCode::ok);
    } catch (const Error& e) {
        std::cerr << "ring-carl: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        std::cerr << "ring-carl: " << e.what() << "\n";
        return static_cast<int>(ExitCode::failure);
    }
}
