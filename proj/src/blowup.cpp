#include "muwave/blowup.hpp"

#include "muwave/diagnostics.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace muwave {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt3 = std::numbers::sqrt3;

bool is_zero(double mu0) { return std::abs(mu0) <= zero_mean_threshold; }

/// Minimizes f over the open interval (lo, hi) in log(alpha), staying a
/// relative 1e-9 away from both ends where f diverges. The result never
/// exceeds f at the arithmetic midpoint.
template <class F>
double minimize_over_alpha(F f, double lo, double hi, std::string& note)
{
    const double a = std::log(lo * (1.0 + 1e-9));
    const double b = std::log(hi * (1.0 - 1e-9));
    const auto [s, value] = boost::math::tools::brent_find_minima(
        [&](double s) { return f(std::exp(s)); }, a, b, std::numeric_limits<double>::digits / 2);
    (void)s;
    const double mid = f(0.5 * (lo + hi));
    if (!(value <= mid)) {
        note = "alpha search did not improve on the interval midpoint; midpoint value used";
        return mid;
    }
    return value;
}

}  // namespace

CriterionResult ch_small_mean(double mu0, double mu1, double slope_cubed_integral)
{
    CriterionResult r{"ch_small_mean", true, false, std::nullopt, {}};
    if (!(mu1 > 0.0)) {
        r.note = "requires mu1 > 0";
        return r;
    }
    const double m = std::abs(mu0);
    const double c = 1.0 + std::abs(slope_cubed_integral);
    if (is_zero(mu0)) {
        // The alpha interval is (0, inf) and the objective no longer depends
        // on alpha.
        r.holds = true;
        r.t_bound = 6.0 + 2.0 * c / (3.0 * std::pow(mu1, 4));
        return r;
    }
    if (!(sqrt3 / pi * m < mu1)) {
        r.note = "(sqrt3/pi)|mu0| >= mu1";
        return r;
    }
    r.holds = true;
    const double lo = m / (2.0 * pi * pi * mu1 * mu1);
    const double hi = 1.0 / (6.0 * m);
    auto f = [&](double alpha) {
        return 6.0 / (1.0 - 6.0 * alpha * m) +
               4.0 * pi * pi * alpha * c / (6.0 * pi * pi * alpha * std::pow(mu1, 4) - 3.0 * m * mu1 * mu1);
    };
    r.t_bound = minimize_over_alpha(f, lo, hi, r.note);
    return r;
}

std::optional<double> steep_slope_threshold(double mu0, double mu1)
{
    const double k2 = 2.0 * mu1 * (sqrt3 / 3.0 * std::abs(mu0) - 0.5 * mu1);
    if (k2 < 0.0)
        return std::nullopt;
    return std::sqrt(k2);
}

CriterionResult ch_steep_slope(double mu0, double mu1, double inf_slope)
{
    CriterionResult r{"ch_steep_slope", true, false, std::nullopt, {}};
    if (!(sqrt3 / pi * std::abs(mu0) >= mu1)) {
        r.note = "(sqrt3/pi)|mu0| < mu1";
        return r;
    }
    const auto K = steep_slope_threshold(mu0, mu1);
    if (!K) {
        r.note = "K^2 < 0";
        return r;
    }
    if (!(inf_slope < -*K)) {
        r.note = "inf u0_x >= -K";
        return r;
    }
    r.holds = true;
    r.t_bound = -2.0 / (inf_slope + std::sqrt(-*K * inf_slope));
    return r;
}

CriterionResult ch_energy_sign(double mu0, double mu1, double H2, double slope_cubed_integral)
{
    CriterionResult r{"ch_energy_sign", true, false, std::nullopt, {}};
    if (!(mu1 > 0.0)) {
        r.note = "requires mu1 > 0";
        return r;
    }
    const double m2 = mu1 * mu1;
    const double lhs = m2 * m2 + 4.0 * mu0 * mu0 * m2;
    if (!(lhs > 8.0 * mu0 * H2)) {
        r.note = "mu1^4 + 4 mu0^2 mu1^2 <= 8 mu0 H2";
        return r;
    }
    r.holds = true;
    r.t_bound = 6.0 + (1.0 + std::abs(slope_cubed_integral)) / (1.5 * m2 * m2 + 6.0 * mu0 * mu0 * m2 - 12.0 * mu0 * H2);
    return r;
}

CriterionResult dp_small_mean(double mu0, double mu2, double slope_cubed_integral)
{
    CriterionResult r{"dp_small_mean", true, false, std::nullopt, {}};
    const double ratio = std::sqrt((32.0 * pi * pi - 9.0) / (32.0 * pi * pi));
    if (is_zero(mu0)) {
        r.holds = true;
        r.note = "mean-zero case: breakdown known, no quantitative bound";
        return r;
    }
    const double m = std::abs(mu0);
    if (!(m < ratio * mu2)) {
        r.note = "|mu0| >= sqrt((32 pi^2 - 9)/(32 pi^2)) mu2";
        return r;
    }
    r.holds = true;
    const double c = 1.0 + std::abs(slope_cubed_integral);
    const double gap = mu2 * mu2 - mu0 * mu0;
    const double lo = mu2 * mu2 / (8.0 * pi * pi * m * gap);
    const double hi = 4.0 / (9.0 * m);
    auto f = [&](double alpha) {
        return 6.0 / (4.0 - 9.0 * alpha * m) +
               2.0 * alpha * c / (72.0 * pi * pi * alpha * mu0 * mu0 * gap - 9.0 * m * mu2 * mu2);
    };
    r.t_bound = minimize_over_alpha(f, lo, hi, r.note);
    return r;
}

DpEnergySignResult dp_energy_sign(const PeriodicField& u0)
{
    DpEnergySignResult out{{"dp_energy_sign", true, false, std::nullopt, {}}, std::nullopt};
    const double mu0 = mean(u0);
    if (is_zero(mu0)) {
        out.result.holds = true;
        out.result.note = "mean-zero case: breakdown known, no quantitative bound";
        return out;
    }
    const double ht2 = conserved_mu_dp(u0).Ht2;
    if (!(mu0 * ht2 <= 0.0)) {
        out.result.note = "mu0 Ht2 > 0";
        return out;
    }
    out.result.holds = true;
    const PeriodicField ux = derivative(u0, 1);
    std::optional<int> best;
    for (int j = 0; j < u0.size(); ++j) {
        if (mu0 * u0[j] <= 0.0 && (!best || std::abs(ux[j]) < std::abs(ux[*best])))
            best = j;
    }
    if (!best)
        throw std::runtime_error("dp_energy_sign: no grid point with mu0 u0 <= 0; grid too coarse");
    out.xi0 = u0.grid().point(*best);
    out.result.t_bound = 1.0 + (1.0 + std::abs(ux[*best])) / (3.0 * mu0 * mu0);
    return out;
}

BreakdownEstimate fit_breakdown(const std::vector<double>& t, const std::vector<double>& min_ux, double w_gate)
{
    BreakdownEstimate est;
    double st = 0.0, sy = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (min_ux[i] <= w_gate) {
            pts.emplace_back(t[i], -1.0 / min_ux[i]);
            st += t[i];
            sy += pts.back().second;
        }
    }
    est.samples = static_cast<int>(pts.size());
    if (pts.size() < 10) {
        est.note = "fewer than 10 rows with min_ux <= " + std::to_string(w_gate);
        return est;
    }
    const double k = static_cast<double>(pts.size());
    const double tbar = st / k, ybar = sy / k;
    double stt = 0.0, sty = 0.0;
    for (const auto& [ti, yi] : pts) {
        stt += (ti - tbar) * (ti - tbar);
        sty += (ti - tbar) * (yi - ybar);
    }
    const double slope = sty / stt;
    if (!(slope < 0.0)) {
        est.note = "fitted -1/min_ux is not decreasing in t";
        return est;
    }
    const double intercept = ybar - slope * tbar;
    est.rate_sigma = -1.0 / slope;
    est.t_star = -intercept / slope;
    return est;
}

BreakdownEstimate estimate_breakdown(const SolutionRecord& record, double w_gate)
{
    if (!record.blew_up()) {
        BreakdownEstimate est;
        est.note = std::string("run ended with ") + to_string(record.termination) + ", not a breakdown";
        return est;
    }
    std::vector<double> mins;
    mins.reserve(record.diagnostics.size());
    for (const auto& row : record.diagnostics)
        mins.push_back(row.min_ux);
    return fit_breakdown(record.times, mins, w_gate);
}

std::optional<double> BlowupReport::tightest_bound() const
{
    std::optional<double> best;
    for (const auto& c : criteria) {
        if (c.applicable && c.holds && c.t_bound && (!best || *c.t_bound < *best))
            best = c.t_bound;
    }
    return best;
}

BlowupReport evaluate_all(const PeriodicField& u0, double lambda)
{
    BlowupReport rep;
    rep.lambda = lambda;
    rep.params = ModelParams::from_initial(u0, lambda);
    const PeriodicField ux = derivative(u0, 1);
    rep.slope_cubed_integral = integrate(ux * ux * ux);
    rep.inf_slope = slope_extrema(u0).min;
    rep.H2 = conserved_mu_ch(u0).H2;
    rep.Ht2 = conserved_mu_dp(u0).Ht2;

    const auto& p = rep.params;
    const bool ch = lambda == 2.0;
    const bool dp = lambda == 3.0;

    auto tag = [](CriterionResult r, bool applicable) {
        r.applicable = applicable;
        if (!applicable) {
            r.t_bound.reset();
            r.holds = false;
            r.note = "not applicable for this lambda";
        }
        return r;
    };
    rep.criteria.push_back(tag(ch_small_mean(p.mu0, p.mu1, rep.slope_cubed_integral), ch));
    rep.criteria.push_back(tag(ch_steep_slope(p.mu0, p.mu1, rep.inf_slope), ch));
    rep.criteria.push_back(tag(ch_energy_sign(p.mu0, p.mu1, rep.H2, rep.slope_cubed_integral), ch));
    rep.criteria.push_back(tag(dp ? dp_energy_sign(u0).result : CriterionResult{"dp_energy_sign", false, false, std::nullopt, {}}, dp));
    rep.criteria.push_back(tag(dp_small_mean(p.mu0, p.mu2, rep.slope_cubed_integral), dp));
    if (!ch && !dp)
        rep.notes.emplace_back("no explicit criteria for this lambda; only the observed run is reported");
    return rep;
}

BlowupReport evaluate_all(const PeriodicField& u0, double lambda, const SolutionRecord& run, double w_gate)
{
    BlowupReport rep = evaluate_all(u0, lambda);
    rep.evolved = true;
    rep.termination = run.termination;
    rep.final_time = run.final_time;
    rep.min_slope_final = run.diagnostics.empty() ? 0.0 : run.diagnostics.back().min_ux;
    rep.observed = estimate_breakdown(run, w_gate);
    if (run.blew_up() && !rep.observed.t_star) {
        rep.observed.t_star = run.final_time;
        rep.notes.emplace_back("no rate fit; t_star is the last accepted time");
    }

    const auto bound = rep.tightest_bound();
    if (bound) {
        const double limit = *bound * (1.0 + 1e-2);
        if (rep.observed.t_star && *rep.observed.t_star > limit) {
            rep.consistency = false;
            rep.notes.emplace_back("observed t_star exceeds a breakdown-time bound");
        }
        if (!run.blew_up() && run.termination == Termination::reached_tmax && run.final_time > limit) {
            rep.consistency = false;
            rep.notes.emplace_back("run outlived a breakdown-time bound without breaking down");
        }
    }
    return rep;
}

}  // namespace muwave
