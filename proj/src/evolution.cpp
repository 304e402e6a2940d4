#include "muwave/evolution.hpp"

#include "muwave/mu_operator.hpp"
#include "muwave/runge_kutta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace muwave {

void SolverConfig::validate() const
{
    auto fail = [](const char* msg) { throw PreconditionError(std::string("solver config: ") + msg); };
    if (!(dt0 > 0.0))
        fail("dt0 must be positive");
    if (!(dt_min > 0.0) || !(dt_min < dt0))
        fail("dt_min must satisfy 0 < dt_min < dt0");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        fail("tolerances must be positive");
    if (!(slope_stop < 0.0))
        fail("slope_stop must be negative");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        fail("t_max must be positive and finite");
    if (!(record_every > 0.0))
        fail("record_every must be positive");
    if (!(cfl > 0.0))
        fail("cfl must be positive");
}

const char* to_string(Termination t)
{
    switch (t) {
    case Termination::reached_tmax:
        return "reached_tmax";
    case Termination::slope_stop_hit:
        return "slope_stop_hit";
    case Termination::dt_collapse:
        return "dt_collapse";
    case Termination::corruption:
        return "corruption";
    }
    return "unknown";
}

PeriodicField rhs(const PeriodicField& u, const ModelParams& params)
{
    require_finite(u, "rhs input");
    const double lambda = params.lambda;
    const PeriodicField ux = derivative(u, 1);
    // u u_x in conservative form so the mean of the result vanishes exactly.
    PeriodicField out = -0.5 * derivative(u * u, 1);
    PeriodicField flux = (lambda * params.mu0) * u;
    if (lambda != 3.0)
        flux += (0.5 * (3.0 - lambda)) * (ux * ux);
    out -= ainv_dx(flux, InverseMethod::fourier);
    return out;
}

namespace {

bool all_finite(const std::vector<double>& v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

SolutionRecord evolve(const PeriodicField& u0, const ModelParams& params, const SolverConfig& config)
{
    config.validate();
    SolutionRecord rec;
    rec.params = params;
    if (!u0.is_finite()) {
        rec.termination = Termination::corruption;
        rec.warnings.emplace_back("initial datum contains non-finite samples");
        return rec;
    }

    const PeriodicGrid grid = u0.grid();
    const int n = grid.size();
    const ModelParams p = params;

    DormandPrince stepper([grid, p](double, const std::vector<double>& y, std::vector<double>& dydt) {
        if (!all_finite(y)) {
            std::fill(dydt.begin(), dydt.end(), std::numeric_limits<double>::quiet_NaN());
            return;
        }
        const PeriodicField r = rhs(PeriodicField(grid, y), p);
        std::copy(r.data().begin(), r.data().end(), dydt.begin());
    });
    const StepTolerance tol{config.rel_tol, config.abs_tol};

    std::vector<double> y = u0.data();
    double t = 0.0;
    double last_h = 0.0;
    bool mean_warned = false;
    bool resolution_warned = false;

    // False when the state or its diagnostics are no longer finite.
    auto record = [&](const PeriodicField& u) -> bool {
        DiagnosticsRow row;
        try {
            row = compute_row(u, t, last_h);
        } catch (const CorruptionError& e) {
            rec.warnings.emplace_back("diagnostics overflowed at t = " + std::to_string(t) + ": " + e.what());
            return false;
        }
        rec.times.push_back(t);
        rec.fields.push_back(u);
        rec.diagnostics.push_back(row);
        if (!resolution_warned && row.resolvedness < 0.99) {
            rec.warnings.emplace_back("resolvedness fell below 0.99 at t = " + std::to_string(t) +
                                      "; later records are under-resolved");
            resolution_warned = true;
        }
        if (!mean_warned && std::abs(mean(u) - p.mu0) > 1e-6) {
            rec.warnings.emplace_back("mean of u drifted from mu0 by more than 1e-6 at t = " + std::to_string(t));
            mean_warned = true;
        }
        return std::isfinite(row.H2) && std::isfinite(row.Ht2) && std::isfinite(row.V);
    };

    if (!record(u0)) {
        rec.termination = Termination::corruption;
        return rec;
    }
    if (rec.diagnostics.back().min_ux <= config.slope_stop) {
        rec.termination = Termination::slope_stop_hit;
        return rec;
    }

    long record_index = 1;
    auto record_target = [&]() { return std::min(config.t_max, record_index * config.record_every); };

    double dt = config.dt0;
    while (true) {
        const double target = record_target();
        const double sup_u = *std::max_element(y.begin(), y.end(), [](double a, double b) {
            return std::abs(a) < std::abs(b);
        });
        double h = dt;
        if (std::abs(sup_u) > 0.0)
            h = std::min(h, config.cfl / (n * std::abs(sup_u)));
        const double unclipped = h;
        bool lands = false;
        if (t + h >= target - 1e-12 * std::max(1.0, target)) {
            h = target - t;
            lands = true;
        }

        const double err = stepper.attempt(t, y, h, tol);
        const double factor = DormandPrince::step_factor(err);
        if (err <= 1.0) {
            y = stepper.proposal();
            stepper.accept();
            t = lands ? target : t + h;
            last_h = h;

            const PeriodicField u(grid, y);
            const double min_ux = derivative(u, 1).min();
            const bool at_end = lands && target >= config.t_max;
            const bool slope_hit = min_ux <= config.slope_stop;
            if (lands || slope_hit) {
                if (!record(u)) {
                    rec.termination = Termination::corruption;
                    break;
                }
                if (lands)
                    ++record_index;
            }
            if (slope_hit) {
                rec.termination = Termination::slope_stop_hit;
                break;
            }
            if (at_end) {
                rec.termination = Termination::reached_tmax;
                break;
            }
            dt = std::max(h * factor, lands ? std::min(unclipped, dt) : 0.0);
        } else {
            dt = h * factor;
        }

        if (dt < config.dt_min) {
            if (rec.times.back() != t) {
                if (!record(PeriodicField(grid, y))) {
                    rec.termination = Termination::corruption;
                    break;
                }
            }
            rec.termination = Termination::dt_collapse;
            break;
        }
    }

    rec.final_time = rec.times.empty() ? t : rec.times.back();
    rec.rhs_evaluations = stepper.rhs_evaluations();
    return rec;
}

namespace {

/// Linear-in-time blend of two trigonometric interpolants.
struct SegmentVelocity {
    const TrigInterpolant& a;
    const TrigInterpolant& b;
    double t0;
    double t1;

    std::pair<double, double> operator()(double t, double x) const
    {
        const double s = (t - t0) / (t1 - t0);
        const double xr = x - std::floor(x);
        const auto [ua, sa] = a.value_and_slope(xr);
        const auto [ub, sb] = b.value_and_slope(xr);
        return {(1.0 - s) * ua + s * ub, (1.0 - s) * sa + s * sb};
    }
};

/// Sup-norm estimate of the linear interpolation error on [t_i, t_{i+1}]
/// from a second divided difference over three consecutive records.
double interpolation_error(const SolutionRecord& rec, std::size_t i)
{
    const double h1 = rec.times[i] - rec.times[i - 1];
    const double h2 = rec.times[i + 1] - rec.times[i];
    const auto& u0 = rec.fields[i - 1].data();
    const auto& u1 = rec.fields[i].data();
    const auto& u2 = rec.fields[i + 1].data();
    double worst = 0.0;
    for (std::size_t j = 0; j < u1.size(); ++j) {
        const double utt = 2.0 * ((u2[j] - u1[j]) / h2 - (u1[j] - u0[j]) / h1) / (h1 + h2);
        worst = std::max(worst, std::abs(utt));
    }
    const double h = std::max(h1, h2);
    return h * h / 8.0 * worst;
}

}  // namespace

CharacteristicPath characteristics(const SolutionRecord& record, double x0, const CharacteristicOptions& options)
{
    if (record.fields.empty())
        throw PreconditionError("characteristics: empty solution record");

    CharacteristicPath path;
    path.x0 = x0;
    path.points.push_back({record.times.front(), x0, 1.0, 1.0});

    auto below = [&](std::size_t i) {
        return options.stop_below_slope && record.diagnostics[i].min_ux < *options.stop_below_slope;
    };
    if (below(0))
        return path;

    std::vector<double> y{x0, 1.0, 0.0};
    std::optional<TrigInterpolant> prev(std::in_place, record.fields.front());
    double dt_guess = 0.0;
    for (std::size_t i = 1; i < record.fields.size(); ++i) {
        if (below(i))
            break;
        TrigInterpolant next(record.fields[i]);
        const double t0 = record.times[i - 1];
        const double t1 = record.times[i];
        const SegmentVelocity vel{*prev, next, t0, t1};
        auto flow = [&vel](double t, const std::vector<double>& s, std::vector<double>& ds) {
            const auto [u, ux] = vel(t, s[0]);
            ds[0] = u;
            ds[1] = ux * s[1];
            ds[2] = ux;
        };
        if (dt_guess <= 0.0)
            dt_guess = t1 - t0;
        const AdaptiveResult r = integrate_adaptive(flow, t0, t1, y, dt_guess, options.tol);
        if (!r.ok) {
            path.sparse_warning = true;
            break;
        }
        dt_guess = std::max(r.last_dt, 1e-3 * (t1 - t0));
        path.points.push_back({t1, y[0], y[1], std::exp(y[2])});

        if (i + 1 < record.fields.size())
            path.interpolation_error_estimate =
                std::max(path.interpolation_error_estimate, interpolation_error(record, i));
        prev.emplace(std::move(next));
    }
    if (path.interpolation_error_estimate > options.interpolation_tol)
        path.sparse_warning = true;
    return path;
}

std::vector<ConservationSample> local_conservation_residual(const SolutionRecord& record,
                                                            const CharacteristicPath& path)
{
    const double lambda = record.params.lambda;
    const TrigInterpolant m_start(apply_A(record.fields.front()));
    const double m0 = m_start(path.x0 - std::floor(path.x0));
    std::vector<ConservationSample> out;
    out.reserve(path.points.size());
    std::size_t i = 0;
    for (const auto& pt : path.points) {
        while (i < record.times.size() && record.times[i] < pt.t)
            ++i;
        if (i == record.times.size())
            break;
        const TrigInterpolant m(apply_A(record.fields[i]));
        const double value = m(pt.q - std::floor(pt.q)) * std::pow(pt.q_x, lambda);
        out.push_back({pt.t, std::abs(value - m0) / (std::abs(m0) + 1.0)});
    }
    return out;
}

std::vector<ConservationSample> local_conservation_residual(const SolutionRecord& record, double x0,
                                                            const CharacteristicOptions& options)
{
    return local_conservation_residual(record, characteristics(record, x0, options));
}

}  // namespace muwave
