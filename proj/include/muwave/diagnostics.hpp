#pragma once

// Conserved quantities of the muCH and muDP hierarchies, the a-priori
// amplitude bounds, the Lyapunov functional V = int u_x^3, and the two
// Poincare-type inequalities used by the blow-up arguments, packaged as
// slack oracles.

#include "muwave/field.hpp"
#include "muwave/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace muwave {

struct SolutionRecord;

struct DiagnosticsRow {
    double t = 0.0;
    double dt = 0.0;  ///< last accepted step (0 for the initial row)
    double min_ux = 0.0;
    double max_ux = 0.0;
    double sup_u = 0.0;
    double H0 = 0.0, H1 = 0.0, H2 = 0.0;
    double Ht0 = 0.0, Ht1 = 0.0, Ht2 = 0.0;
    double V = 0.0;
    double resolvedness = 1.0;  ///< resolvedness() of the momentum m = A u
};

struct MuChInvariants {
    double H0, H1, H2;
};

struct MuDpInvariants {
    double Ht0, Ht1, Ht2;
};

/// H0 = int m, H1 = 1/2 int m u, H2 = int (mu(u) u^2 + 1/2 u u_x^2).
MuChInvariants conserved_mu_ch(const PeriodicField& u);

/// Ht0 = -9/2 int m, Ht1 = 1/2 int u^2,
/// Ht2 = int (3/2 mu(u) (A^{-1} u_x)^2 + 1/6 u^3).
MuDpInvariants conserved_mu_dp(const PeriodicField& u);

/// |mu0| + (sqrt(3)/6) mu1 - sup|u|. Nonnegative along muCH solutions.
double apriori_sup_bound(const PeriodicField& u, const ModelParams& params);

/// Worst margin over the record of
/// ((3/2) mu0^2 + 6 |mu0| mu2) t + ||u0||_inf - sup|u(t)|.
/// Only meaningful for muDP; other lambda give std::nullopt.
std::optional<double> linear_growth_bound(const SolutionRecord& record);

/// (1/12) int f_x^2 - max f^2 for zero-mean f. Throws PreconditionError if
/// |mean(f)| > 1e-10.
double sobolev_oracle(const PeriodicField& f);

/// (1/(4 pi^2)) int f_x^2 - int f^2 for zero-mean f. Zero exactly on
/// A cos(2 pi x) + B sin(2 pi x).
double wirtinger_oracle(const PeriodicField& f);

/// V = int u_x^3.
double lyapunov_V(const PeriodicField& u);

struct SlopeExtrema {
    double min;
    double max;
    double argmin;  ///< location of the minimum in [0, 1)
};

/// Extrema of u_x over the circle. The grid extrema are refined by Newton
/// steps on u_xx = 0 using the trigonometric interpolant, so the minimum
/// tracks the true profile rather than the nearest sample.
SlopeExtrema slope_extrema(const PeriodicField& u);

/// Every diagnostic above that depends only on the current state.
DiagnosticsRow compute_row(const PeriodicField& u, double t, double dt);

/// Relative drift |q(t) - q(0)| / max(1, |q(0)|).
double relative_drift(double value, double initial);

}  // namespace muwave
