#include "muwave/diagnostics.hpp"

#include "muwave/evolution.hpp"
#include "muwave/mu_operator.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace muwave {

ModelParams ModelParams::from_initial(const PeriodicField& u0, double lambda)
{
    require_finite(u0, "initial datum");
    const PeriodicField ux = derivative(u0, 1);
    ModelParams p;
    p.lambda = lambda;
    p.mu0 = mean(u0);
    p.mu1 = std::sqrt(integrate(ux * ux));
    p.mu2 = std::sqrt(integrate(u0 * u0));
    return p;
}

MuChInvariants conserved_mu_ch(const PeriodicField& u)
{
    require_finite(u, "conserved_mu_ch input");
    const double mu = mean(u);
    const PeriodicField ux = derivative(u, 1);
    const PeriodicField m = apply_A(u);
    return {
        mean(m),
        0.5 * integrate(m * u),
        integrate(mu * (u * u) + 0.5 * (u * ux * ux)),
    };
}

MuDpInvariants conserved_mu_dp(const PeriodicField& u)
{
    require_finite(u, "conserved_mu_dp input");
    const double mu = mean(u);
    const PeriodicField v = ainv_dx(u, InverseMethod::fourier);
    return {
        -4.5 * mean(apply_A(u)),
        0.5 * integrate(u * u),
        integrate(1.5 * mu * (v * v) + (1.0 / 6.0) * (u * u * u)),
    };
}

double apriori_sup_bound(const PeriodicField& u, const ModelParams& params)
{
    return std::abs(params.mu0) + std::numbers::sqrt3 / 6.0 * params.mu1 - u.sup_norm();
}

std::optional<double> linear_growth_bound(const SolutionRecord& record)
{
    if (record.params.lambda != 3.0 || record.fields.empty())
        return std::nullopt;
    const ModelParams& p = record.params;
    const double rate = 1.5 * p.mu0 * p.mu0 + 6.0 * std::abs(p.mu0) * p.mu2;
    const double start = record.fields.front().sup_norm();
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < record.fields.size(); ++i) {
        const double bound = rate * record.times[i] + start;
        worst = std::min(worst, bound - record.fields[i].sup_norm());
    }
    return worst;
}

namespace {

void require_zero_mean(const PeriodicField& f, const char* what)
{
    require_finite(f, what);
    if (std::abs(mean(f)) > 1e-10)
        throw PreconditionError(std::string(what) + ": input must have zero mean");
}

}  // namespace

double sobolev_oracle(const PeriodicField& f)
{
    require_zero_mean(f, "sobolev_oracle");
    const PeriodicField fx = derivative(f, 1);
    const double peak = f.sup_norm();
    return integrate(fx * fx) / 12.0 - peak * peak;
}

double wirtinger_oracle(const PeriodicField& f)
{
    require_zero_mean(f, "wirtinger_oracle");
    const PeriodicField fx = derivative(f, 1);
    const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
    return integrate(fx * fx) / four_pi2 - integrate(f * f);
}

double lyapunov_V(const PeriodicField& u)
{
    require_finite(u, "lyapunov_V input");
    const PeriodicField ux = derivative(u, 1);
    return integrate(ux * ux * ux);
}

SlopeExtrema slope_extrema(const PeriodicField& u)
{
    require_finite(u, "slope_extrema input");
    const PeriodicField ux = derivative(u, 1);
    const auto values = ux.values();
    const auto lo = std::min_element(values.begin(), values.end());
    const auto hi = std::max_element(values.begin(), values.end());
    const TrigInterpolant slope(ux);
    const TrigInterpolant curvature(derivative(u, 2));
    const double h = u.grid().spacing();

    auto refine = [&](std::ptrdiff_t j, double grid_value, bool is_min) {
        const double x0 = static_cast<double>(j) * h;
        double x = x0;
        try {
            std::uintmax_t iterations = 20;
            x = boost::math::tools::newton_raphson_iterate([&](double s) { return curvature.value_and_slope(s); },
                                                           x0, x0 - h, x0 + h, 40, iterations);
        } catch (const std::exception&) {
            return std::pair{grid_value, x0};
        }
        const double v = slope(x);
        if (!std::isfinite(v) || (is_min ? v > grid_value : v < grid_value))
            return std::pair{grid_value, x0};
        return std::pair{v, x};
    };

    const auto [min_v, min_x] = refine(lo - values.begin(), *lo, true);
    const auto [max_v, max_x] = refine(hi - values.begin(), *hi, false);
    (void)max_x;
    return {min_v, max_v, min_x - std::floor(min_x)};
}

DiagnosticsRow compute_row(const PeriodicField& u, double t, double dt)
{
    require_finite(u, "diagnostics input");
    const PeriodicField ux = derivative(u, 1);
    DiagnosticsRow row;
    row.t = t;
    row.dt = dt;
    const SlopeExtrema ext = slope_extrema(u);
    row.min_ux = ext.min;
    row.max_ux = ext.max;
    row.sup_u = u.sup_norm();
    const auto ch = conserved_mu_ch(u);
    row.H0 = ch.H0;
    row.H1 = ch.H1;
    row.H2 = ch.H2;
    const auto dp = conserved_mu_dp(u);
    row.Ht0 = dp.Ht0;
    row.Ht1 = dp.Ht1;
    row.Ht2 = dp.Ht2;
    row.V = integrate(ux * ux * ux);
    // Measured on the momentum m = A u, the quantity the flow transports.
    // Its spectrum weights mode k by k^2 relative to u_x, so it flags loss of
    // resolution well before the conserved quantities start to drift.
    row.resolvedness = resolvedness(apply_A(u));
    return row;
}

double relative_drift(double value, double initial)
{
    return std::abs(value - initial) / std::max(1.0, std::abs(initial));
}

}  // namespace muwave
