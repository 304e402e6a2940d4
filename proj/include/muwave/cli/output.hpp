#pragma once

// Serialized outputs of the runner. Every float goes through format_double,
// the shortest decimal that reads back to the same double, so identical runs
// give byte-identical files.

#include "muwave/blowup.hpp"
#include "muwave/evolution.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace muwave::cli {

struct RunConfig;

/// File-system failure while writing outputs (exit code 4).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal; "nan", "inf" and "-inf" for non-finite input.
std::string format_double(double v);

/// Column order of the time-series CSV.
inline constexpr const char* timeseries_columns =
    "t,dt,min_ux,max_ux,sup_u,H0,H1,H2,Ht0,Ht1,Ht2,V,resolvedness";

/// Header plus one row per recorded state.
std::string timeseries_csv(const SolutionRecord& record);

/// Run summary with keys model, params, termination, t_star, rate_sigma and
/// theorems[]. `run` is null for criteria-only reports; termination is then
/// "not_evolved".
nlohmann::json report_json(const RunConfig& config, const BlowupReport& report, const SolutionRecord* run);

/// Two-space indented JSON whose floats use format_double.
std::string dump_json(const nlohmann::json& value);

/// Creates the parent directory if needed and writes the file. Throws
/// IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace muwave::cli
