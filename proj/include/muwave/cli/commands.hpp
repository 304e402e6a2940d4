#pragma once

// Subcommands of the `muwave` runner and its process exit codes.

#include "muwave/cli/config.hpp"
#include "muwave/cli/verify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace muwave::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int config_error = 2;
inline constexpr int corruption = 3;
inline constexpr int io_error = 4;
inline constexpr int internal_error = 5;
/// Detected blow-up: the expected outcome of a breaking run, not a failure.
inline constexpr int blowup = 10;
}  // namespace exit_code

struct CommandContext {
    std::ostream& out;
    std::ostream& err;
    bool quiet = false;
};

/// Evolves the configured datum; writes <prefix>_timeseries.csv and
/// <prefix>_summary.json into the output directory.
int cmd_simulate(const RunConfig& config, const CommandContext& ctx);

/// Predicates and bounds only; writes <prefix>_criteria.json.
int cmd_criteria(const RunConfig& config, const CommandContext& ctx);

/// Runs one property suite; writes <prefix>_verify_<suite>.json.
int cmd_verify(const RunConfig& config, Suite suite, const CommandContext& ctx);

/// Runs every sweep case on at most `jobs` worker threads (0 = available
/// parallelism). Each case writes into case_NNNN/; the master table
/// <prefix>_sweep.csv lists cases in id order.
int cmd_sweep(const RunConfig& config, unsigned jobs, const CommandContext& ctx);

/// Column order of the sweep master table.
std::vector<std::string> sweep_columns();

/// Parses arguments and dispatches; returns the process exit code.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace muwave::cli
