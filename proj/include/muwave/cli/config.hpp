#pragma once

// Run configuration for the command-line runner. Two encodings are accepted
// and read through the same schema:
//   - INI-style sections with key = value entries (".ini", ".cfg" or any
//     unrecognized extension). Lists are comma separated; Fourier modes are
//     written k:cos_amp:sin_amp. The init variant is a dotted section name
//     such as [init.fourier].
//   - JSON (".json"), with nested objects mirroring the sections.
// Unknown sections and keys are rejected so typos cannot silently fall back
// to defaults.

#include "muwave/evolution.hpp"
#include "muwave/field.hpp"
#include "muwave/peakon.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace muwave::cli {

/// Invalid or incomplete configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FourierMode {
    int k = 1;
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

/// mean + sum (cos_amp cos 2 pi k x + sin_amp sin 2 pi k x).
struct FourierInit {
    double mean = 0.0;
    std::vector<FourierMode> modes;
};

struct PeakonInit {
    double c = 1.0;
};

/// Multi-peakon, or shock-peakon when s is non-empty.
struct MultipeakonInit {
    PeakonConfig peakons;
};

/// Single column of n reals, read at parse time.
struct SamplesInit {
    std::filesystem::path path;
    std::vector<double> values;
};

using InitSpec = std::variant<FourierInit, PeakonInit, MultipeakonInit, SamplesInit>;

enum class VerifyFault { none, affine_table };

struct VerifySpec {
    unsigned seed = 1;
    int cases = 20;  ///< random fields per randomized check
    /// Test fixture: perturbs one affine connection coefficient so the
    /// geometry suite must fail.
    VerifyFault fault = VerifyFault::none;
};

/// Cartesian product of the listed values, enumerated with lambda outermost,
/// then n, mean, amplitude. Empty lists keep the base configuration's value.
struct SweepSpec {
    std::vector<double> lambda;
    std::vector<int> n;
    std::vector<double> mean;       ///< replaces the Fourier mean
    std::vector<double> amplitude;  ///< scales every Fourier mode
    bool evolve = true;             ///< false evaluates the criteria only
};

struct RunConfig {
    double lambda = 2.0;
    int n = 256;
    InitSpec init;
    SolverConfig solver;
    double w_gate = -50.0;
    std::filesystem::path out_dir = "out";
    std::string prefix = "run";
    VerifySpec verify;
    std::optional<SweepSpec> sweep;

    /// Throws ConfigError on inconsistent settings.
    void validate() const;
};

/// Parses text in the given encoding. Relative sample paths resolve against
/// base_dir.
RunConfig parse_config_text(const std::string& text, bool json, const std::filesystem::path& base_dir = ".");

/// Reads and parses a file; the encoding follows the extension.
RunConfig load_config(const std::filesystem::path& path);

/// Samples the initial datum on the configured grid.
PeriodicField build_initial(const RunConfig& config);

/// Short name of the init variant ("fourier", "peakon", ...).
std::string init_kind(const InitSpec& init);

}  // namespace muwave::cli
