#pragma once

// Explicit wave-breaking criteria for the muCH (lambda = 2) and muDP
// (lambda = 3) members of the family, their upper bounds on the breakdown
// time, and the observed breakdown time and rate fitted from a solver run.
//
// Criteria, by role:
//   ch_small_mean       muCH, (sqrt3/pi)|mu0| < mu1; bound minimized over a
//                       free parameter alpha
//   ch_steep_slope      muCH, (sqrt3/pi)|mu0| >= mu1 and inf u0_x < -K
//   ch_energy_sign      muCH, mu1^4 + 4 mu0^2 mu1^2 > 8 mu0 H2
//   dp_energy_sign      muDP, mu0 Ht2 <= 0
//   dp_small_mean       muDP, |mu0| < sqrt((32 pi^2 - 9)/(32 pi^2)) mu2;
//                       bound minimized over alpha
//
// With mu0 = 0 the muDP criteria reduce to the mean-zero (muBurgers-type)
// case, which is known to break down; they report holds = true with no
// quantitative bound.

#include "muwave/evolution.hpp"
#include "muwave/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace muwave {

struct CriterionResult {
    std::string id;
    bool applicable = false;  ///< the criterion belongs to the run's lambda
    bool holds = false;
    std::optional<double> t_bound;  ///< present only when holds
    std::string note;
};

/// Means with |mu0| at or below this are treated as zero.
inline constexpr double zero_mean_threshold = 1e-12;

CriterionResult ch_small_mean(double mu0, double mu1, double slope_cubed_integral);
CriterionResult ch_steep_slope(double mu0, double mu1, double inf_slope);
CriterionResult ch_energy_sign(double mu0, double mu1, double H2, double slope_cubed_integral);
CriterionResult dp_small_mean(double mu0, double mu2, double slope_cubed_integral);

struct DpEnergySignResult {
    CriterionResult result;
    std::optional<double> xi0;  ///< grid point used in the bound
};

/// Decides mu0 Ht2(u0) <= 0. The bound uses the admissible grid point
/// (mu0 u0 <= 0) with the smallest |u0_x|. Throws std::runtime_error if the
/// criterion holds but no admissible grid point exists.
DpEnergySignResult dp_energy_sign(const PeriodicField& u0);

/// Constant of the steep-slope criterion,
/// K = sqrt(2 mu1 ((sqrt3/3)|mu0| - mu1/2)); nullopt when the radicand is
/// negative.
std::optional<double> steep_slope_threshold(double mu0, double mu1);

struct BreakdownEstimate {
    std::optional<double> t_star;
    std::optional<double> rate_sigma;
    int samples = 0;  ///< rows in the gated window
    std::string note;
};

/// Least-squares fit of y = -1/min_ux against t over rows with
/// min_ux <= w_gate, under the model min_ux = -sigma/(T - t). Requires at
/// least 10 gated rows and a negative fitted slope.
BreakdownEstimate estimate_breakdown(const SolutionRecord& record, double w_gate = -50.0);

/// Same fit on raw (t, min_ux) samples.
BreakdownEstimate fit_breakdown(const std::vector<double>& t, const std::vector<double>& min_ux,
                                double w_gate = -50.0);

struct BlowupReport {
    double lambda = 2.0;
    ModelParams params;
    double slope_cubed_integral = 0.0;  ///< int u0_x^3
    double inf_slope = 0.0;             ///< min u0_x
    double H2 = 0.0;
    double Ht2 = 0.0;
    std::vector<CriterionResult> criteria;

    bool evolved = false;
    std::optional<Termination> termination;
    double final_time = 0.0;
    double min_slope_final = 0.0;
    BreakdownEstimate observed;
    /// Observed breakdown no later than every bound (with a 1e-2 relative
    /// margin), and no run that outlived a bound without breaking down.
    bool consistency = true;
    std::vector<std::string> notes;

    /// Smallest bound among criteria that hold, if any.
    std::optional<double> tightest_bound() const;
};

/// Criteria and bounds from the initial datum only.
BlowupReport evaluate_all(const PeriodicField& u0, double lambda);

/// Criteria plus the observed breakdown from a completed run of u0.
BlowupReport evaluate_all(const PeriodicField& u0, double lambda, const SolutionRecord& run, double w_gate = -50.0);

}  // namespace muwave
