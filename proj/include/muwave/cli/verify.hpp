#pragma once

// Property suites run by `muwave verify`. Each check compares one measured
// value against a fixed limit; tolerances were set by refinement studies at
// n = 256 and 1024 and scale with n where round-off does.

#include "muwave/cli/config.hpp"

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace muwave::cli {

enum class Suite { operators, peakon, geometry, inequalities };

std::optional<Suite> parse_suite(std::string_view name);
const char* to_string(Suite suite);

struct VerifyCheck {
    std::string id;
    double value = 0.0;
    double limit = 0.0;
    bool upper = true;  ///< pass iff value <= limit, else value >= limit
    bool pass = false;
};

struct VerifyResult {
    Suite suite = Suite::operators;
    int n = 0;
    std::vector<VerifyCheck> checks;

    bool pass() const;
};

/// mean + sum_{k=1}^{max_mode} (a_k cos 2 pi k x + b_k sin 2 pi k x) with
/// a_k, b_k uniform in [-1, 1].
PeriodicField random_trig_polynomial(const PeriodicGrid& grid, std::mt19937_64& rng, int max_mode,
                                     double mean_value = 0.0);

/// Runs the suite on the configured grid size, seed and case count.
VerifyResult run_suite(Suite suite, const RunConfig& config);

}  // namespace muwave::cli
