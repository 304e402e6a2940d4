#pragma once

// Peaked solutions of the family. The periodic one-peakon of muCH is
//
//   phi(x) = (c/26)(12 x^2 + 23)  on [-1/2, 1/2], extended periodically,
//
// with its corner at x = 1/2 (mod 1). Multi-peakon and shock-peakon fields
// are finite sums of g and g' at given positions.

#include "muwave/field.hpp"

#include <vector>

namespace muwave {

struct PeakonConfig {
    double c = 1.0;          ///< wave speed of the one-peakon
    std::vector<double> p;   ///< amplitudes
    std::vector<double> q;   ///< positions in [0, 1)
    std::vector<double> s;   ///< shock strengths (muDP only); empty means none

    /// Throws PreconditionError unless p and q are non-empty with equal
    /// length, s is empty or of that length, and every q lies in [0, 1).
    void validate() const;
};

/// Samples of the periodic one-peakon with speed c.
PeriodicField one_peakon(double c, const PeriodicGrid& grid);

/// phi'(x) on the chart [-1/2, 1/2): (12c/13) y with y the chart
/// coordinate. Zero at the corner, where the one-sided limits are +-6c/13.
double one_peakon_slope(double c, double x);

/// sum_i p_i g(x - q_i).
PeriodicField multipeakon_field(const PeakonConfig& cfg, const PeriodicGrid& grid);

/// sum_i p_i g(x - q_i) + s_i g'(x - q_i), using g'(0) = 0.
PeriodicField shockpeakon_field(const PeakonConfig& cfg, const PeriodicGrid& grid);

/// Grid points used by the peakon checks: farther than `exclusion` from the
/// corner, and never one of the two samples nearest to it.
std::vector<int> off_corner_points(const PeriodicGrid& grid, double exclusion);

/// Substitutes u = phi(x - c t) into the muCH evolution form and returns
/// max |-c phi' + phi phi' + A^{-1} d/dx (2 mu(phi) phi + phi'^2/2)| / |c|
/// over off_corner_points. phi' is analytic; A^{-1} d/dx uses the
/// closed-form path. Returns 0 for c = 0. Throws PreconditionError unless
/// 0 < exclusion < 1/4.
double traveling_wave_residual(double c, int n, double exclusion);

/// max |A phi| / |c| over off_corner_points. Analytically A phi vanishes
/// off the corner; the discrete value is the tail left by the corner.
double peakon_m_flatness(double c, int n, double exclusion);

}  // namespace muwave
