#ifndef RINGCARL_RUNNER_HPP
#define RINGCARL_RUNNER_HPP

#include <string>

#include "ringcarl/config.hpp"

// Command implementations behind the ring-carl CLI. Every CSV starts with
// a '#'-prefixed metadata block holding the full resolved configuration
// and seed, so each output file reproduces itself. No timestamps: two
// runs with identical configuration are byte-identical.
namespace ringcarl::runner {

// Effective dt for the given configuration: the configured value, or
// min(0.005, stability bound over all swept detunings) when dt = 0.
double resolve_dt(const RunConfig& cfg);

std::string threshold_csv(const RunConfig& cfg);
std::string meanfield_csv(const RunConfig& cfg, int iters);
std::string meanfield_summary_json(const RunConfig& cfg, int iters);
std::string simulate_csv(const RunConfig& cfg);
std::string sweep_sim_csv(const RunConfig& cfg);

// Validates, dispatches on cfg.command and writes the output file(s).
// threshold/simulate/sweep-sim write cfg.out (stdout if empty);
// meanfield writes cfg.out plus cfg.out + ".summary.json" and, when
// iterations_list is set, one CSV per count with an ".itN" infix.
void run_command(const RunConfig& cfg);

} // namespace ringcarl::runner

#endif
