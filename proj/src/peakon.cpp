#include "muwave/peakon.hpp"

#include "muwave/mu_operator.hpp"

#include <algorithm>
#include <cmath>

namespace muwave {
namespace {

/// Chart coordinate in [-1/2, 1/2).
double chart(double x)
{
    const double r = x - std::floor(x);
    return r < 0.5 ? r : r - 1.0;
}

void check_exclusion(double exclusion)
{
    if (!(exclusion > 0.0 && exclusion < 0.25))
        throw PreconditionError("peakon: exclusion must lie in (0, 1/4)");
}

}  // namespace

void PeakonConfig::validate() const
{
    if (p.empty())
        throw PreconditionError("peakon config: at least one peakon is required");
    if (q.size() != p.size())
        throw PreconditionError("peakon config: p and q must have equal length");
    if (!s.empty() && s.size() != p.size())
        throw PreconditionError("peakon config: s must be empty or match p in length");
    for (double qi : q)
        if (!(qi >= 0.0 && qi < 1.0))
            throw PreconditionError("peakon config: positions must lie in [0, 1)");
}

PeriodicField one_peakon(double c, const PeriodicGrid& grid)
{
    return PeriodicField::sample(grid, [c](double x) {
        const double y = chart(x);
        return c / 26.0 * (12.0 * y * y + 23.0);
    });
}

double one_peakon_slope(double c, double x)
{
    const double y = chart(x);
    if (y == -0.5)
        return 0.0;
    return 12.0 * c / 13.0 * y;
}

PeriodicField multipeakon_field(const PeakonConfig& cfg, const PeriodicGrid& grid)
{
    cfg.validate();
    return PeriodicField::sample(grid, [&](double x) {
        double v = 0.0;
        for (std::size_t i = 0; i < cfg.p.size(); ++i)
            v += cfg.p[i] * green(x - cfg.q[i]);
        return v;
    });
}

PeriodicField shockpeakon_field(const PeakonConfig& cfg, const PeriodicGrid& grid)
{
    cfg.validate();
    PeriodicField out = multipeakon_field(cfg, grid);
    if (cfg.s.empty())
        return out;
    for (int j = 0; j < grid.size(); ++j) {
        const double x = grid.point(j);
        for (std::size_t i = 0; i < cfg.p.size(); ++i)
            out[j] += cfg.s[i] * green_prime(x - cfg.q[i]);
    }
    return out;
}

std::vector<int> off_corner_points(const PeriodicGrid& grid, double exclusion)
{
    const double h = grid.spacing();
    const double radius = std::max(exclusion, h);
    std::vector<int> out;
    for (int j = 0; j < grid.size(); ++j) {
        const double d = std::abs(std::abs(chart(grid.point(j))) - 0.5);
        if (d > radius)
            out.push_back(j);
    }
    return out;
}

double traveling_wave_residual(double c, int n, double exclusion)
{
    check_exclusion(exclusion);
    if (c == 0.0)
        return 0.0;
    const PeriodicGrid grid(n);
    const PeriodicField phi = one_peakon(c, grid);
    const PeriodicField slope = PeriodicField::sample(grid, [c](double x) { return one_peakon_slope(c, x); });
    // phi'^2 is continuous across the corner, so it is sampled from the
    // chart directly rather than squared from the zero corner value of phi'.
    const PeriodicField slope_sq = PeriodicField::sample(grid, [c](double x) {
        const double s = 12.0 * c / 13.0 * chart(x);
        return s * s;
    });
    const PeriodicField flux = (2.0 * mean(phi)) * phi + 0.5 * slope_sq;
    const PeriodicField nonlocal = ainv_dx(flux, InverseMethod::closed_form);
    double worst = 0.0;
    for (int j : off_corner_points(grid, exclusion)) {
        const double r = -c * slope[j] + phi[j] * slope[j] + nonlocal[j];
        worst = std::max(worst, std::abs(r));
    }
    return worst / std::abs(c);
}

double peakon_m_flatness(double c, int n, double exclusion)
{
    check_exclusion(exclusion);
    if (c == 0.0)
        return 0.0;
    const PeriodicGrid grid(n);
    const PeriodicField m = apply_A(one_peakon(c, grid));
    double worst = 0.0;
    for (int j : off_corner_points(grid, exclusion))
        worst = std::max(worst, std::abs(m[j]));
    return worst / std::abs(c);
}

}  // namespace muwave
