#ifndef RINGCARL_CONFIG_HPP
#define RINGCARL_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ringcarl/params.hpp"
#include "ringcarl/simulate.hpp"

namespace ringcarl {

// Resolved run configuration: physical parameters, integrator settings,
// sweep grids, and output selection. Parsed from a flat key=value text
// file ('#' comments, '.' decimal separator, no locale dependence) with
// command-line overrides. Unknown keys are errors.
struct RunConfig {
    std::string command; // threshold | meanfield | simulate | sweep-sim

    SystemParams params;

    // simulate / sweep-sim
    double dt = 0.0; // 0 = auto: min(0.005, stability bound)
    double t_end = 60.0;
    int record_every = 20;
    std::uint64_t seed = 1;
    std::string field_mode = "dynamic"; // dynamic | adiabatic
    double p0 = 0.0;

    // meanfield
    int grid_points = 1024;
    double r0 = 0.01;
    int max_iters = 100;
    double tol = 1e-8;
    bool velocity_update = false;
    double dt_iter = 1.0;
    std::string iterations_list; // e.g. "5,10,100": one output file per count

    // sweep grids
    double delta_c_min = 0.0, delta_c_max = 0.0;
    int delta_c_count = 1;
    double eta_min = 0.0, eta_max = 0.0;
    int eta_count = 1;
    double v_min = 0.0, v_max = 0.0;
    int v_count = 1;
    std::string scan = "delta_c"; // threshold scan variable: delta_c | v

    int jobs = 1;
    std::string out;

    // Uniform grids from the *_min/*_max/*_count triples. A count of 1
    // yields the single value *_min.
    std::vector<double> delta_c_grid() const;
    std::vector<double> eta_grid() const;
    std::vector<double> v_grid() const;

    simulate::SimConfig sim_config() const;

    // Full invariant check (SystemParams, grids, enums). Throws ConfigError.
    void validate() const;
};

// Applies key=value pairs from a config file. Unknown keys, malformed
// values and duplicate keys fail with line diagnostics.
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig parse_config_file(const std::string& path, RunConfig base = {});

// Applies a single key=value override (command line).
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

// Canonical serialization: every key in a fixed order, round-trip exact
// (parse(serialize(c)) == c, serialize(parse(serialize(c))) == serialize(c)).
std::string serialize_config(const RunConfig& cfg);

// Shortest decimal form that parses back to the same double ("%.17g"
// fallback), C locale. All CSV/JSON output uses this.
std::string format_double(double v);

// "5,10,100" -> {5, 10, 100}; throws ConfigError on malformed input.
std::vector<int> parse_int_list(const std::string& text);

} // namespace ringcarl

#endif
