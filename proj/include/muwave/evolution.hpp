#pragma once

// Time evolution of the recast family equation
//
//   u_t = -u u_x - A^{-1} d/dx (lambda mu0 u + (3 - lambda)/2 u_x^2)
//
// with adaptive Dormand-Prince stepping, slope-based breakdown detection,
// characteristics tracking and the local conservation law
// m(t, q) q_x^lambda = m0.

#include "muwave/diagnostics.hpp"
#include "muwave/field.hpp"
#include "muwave/model.hpp"
#include "muwave/runge_kutta.hpp"

#include <optional>
#include <string>
#include <vector>

namespace muwave {

struct SolverConfig {
    double dt0 = 1e-4;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double slope_stop = -1e4;  ///< stop once min u_x <= slope_stop
    double dt_min = 1e-12;
    double t_max = 1.0;
    /// Time between recorded states. Steps are shortened to land on every
    /// multiple of record_every; keep it small for characteristic studies,
    /// since u is interpolated linearly in time between records.
    double record_every = 1e-2;
    /// Advective cap dt <= cfl / (n max|u|).
    double cfl = 0.5;

    /// Throws PreconditionError on inconsistent settings.
    void validate() const;
};

enum class Termination { reached_tmax, slope_stop_hit, dt_collapse, corruption };

const char* to_string(Termination t);

struct SolutionRecord {
    ModelParams params;
    std::vector<double> times;
    std::vector<PeriodicField> fields;
    std::vector<DiagnosticsRow> diagnostics;
    Termination termination = Termination::reached_tmax;
    double final_time = 0.0;
    long rhs_evaluations = 0;
    std::vector<std::string> warnings;

    bool blew_up() const noexcept
    {
        return termination == Termination::slope_stop_hit || termination == Termination::dt_collapse;
    }
};

/// Right-hand side of the evolution equation, using the Fourier realization
/// of A^{-1} d/dx. Has zero mean up to round-off.
PeriodicField rhs(const PeriodicField& u, const ModelParams& params);

/// Integrates from u0 until t_max, slope_stop, or step-size collapse. A
/// corrupted state ends the run with Termination::corruption and the partial
/// record; evolve never throws for numerical failure.
SolutionRecord evolve(const PeriodicField& u0, const ModelParams& params, const SolverConfig& config);

struct CharacteristicPoint {
    double t;
    double q;        ///< q(t, x0), unwrapped on the line
    double q_x;      ///< evolved directly: d q_x/dt = u_x(t, q) q_x
    double q_x_exp;  ///< exp(int_0^t u_x(tau, q) d tau)
};

struct CharacteristicPath {
    double x0 = 0.0;
    std::vector<CharacteristicPoint> points;  ///< one per recorded time
    /// Set when the estimated error of linear-in-time interpolation between
    /// records exceeds `interpolation_tol`.
    bool sparse_warning = false;
    double interpolation_error_estimate = 0.0;
};

struct CharacteristicOptions {
    StepTolerance tol{1e-11, 1e-13};
    double interpolation_tol = 1e-6;
    /// Stop tracking once min u_x of the recorded state drops below this.
    std::optional<double> stop_below_slope;
};

/// Flow map dq/dt = u(t, q), q(0) = x0, with u interpolated
/// trigonometrically in space and linearly in time between records.
CharacteristicPath characteristics(const SolutionRecord& record, double x0, const CharacteristicOptions& options = {});

struct ConservationSample {
    double t;
    double residual;  ///< |m(t,q) q_x^lambda - m0(x0)| / (|m0(x0)| + 1)
};

std::vector<ConservationSample> local_conservation_residual(const SolutionRecord& record,
                                                            const CharacteristicPath& path);

/// Convenience overload computing the path first.
std::vector<ConservationSample> local_conservation_residual(const SolutionRecord& record, double x0,
                                                            const CharacteristicOptions& options = {});

}  // namespace muwave
