#include "muwave/runge_kutta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace muwave {
namespace {

constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                 b6 = 11.0 / 84.0;
// Fifth-order minus embedded fourth-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

}  // namespace

DormandPrince::DormandPrince(Rhs rhs) : rhs_(std::move(rhs)), k_(7) {}

double DormandPrince::attempt(double t, const State& y, double dt, const StepTolerance& tol)
{
    const std::size_t n = y.size();
    for (auto& k : k_)
        k.resize(n);
    stage_.resize(n);
    y_new_.resize(n);

    auto eval = [&](double tt, const State& yy, State& out) {
        rhs_(tt, yy, out);
        ++evaluations_;
    };

    // k_[0] stays valid across rejected attempts from the same (t, y).
    if (!fsal_valid_) {
        eval(t, y, k_[0]);
        fsal_valid_ = true;
    }

    auto& k1 = k_[0];
    auto& k2 = k_[1];
    auto& k3 = k_[2];
    auto& k4 = k_[3];
    auto& k5 = k_[4];
    auto& k6 = k_[5];
    auto& k7 = k_[6];

    for (std::size_t i = 0; i < n; ++i)
        stage_[i] = y[i] + dt * a21 * k1[i];
    eval(t + c2 * dt, stage_, k2);
    for (std::size_t i = 0; i < n; ++i)
        stage_[i] = y[i] + dt * (a31 * k1[i] + a32 * k2[i]);
    eval(t + c3 * dt, stage_, k3);
    for (std::size_t i = 0; i < n; ++i)
        stage_[i] = y[i] + dt * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    eval(t + c4 * dt, stage_, k4);
    for (std::size_t i = 0; i < n; ++i)
        stage_[i] = y[i] + dt * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    eval(t + c5 * dt, stage_, k5);
    for (std::size_t i = 0; i < n; ++i)
        stage_[i] = y[i] + dt * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    eval(t + dt, stage_, k6);
    for (std::size_t i = 0; i < n; ++i)
        y_new_[i] = y[i] + dt * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    eval(t + dt, y_new_, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double scale = tol.abs + tol.rel * std::max(std::abs(y[i]), std::abs(y_new_[i]));
        const double r = std::abs(e) / scale;
        if (!std::isfinite(r) || !std::isfinite(y_new_[i]))
            return std::numeric_limits<double>::infinity();
        err = std::max(err, r);
    }
    return err;
}

double DormandPrince::step_factor(double err)
{
    if (!std::isfinite(err))
        return 0.2;
    if (err == 0.0)
        return 5.0;
    return std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
}

AdaptiveResult integrate_adaptive(const DormandPrince::Rhs& rhs, double t0, double t1, std::vector<double>& y,
                                  double dt_initial, const StepTolerance& tol, double dt_min)
{
    AdaptiveResult result;
    DormandPrince stepper(rhs);
    double t = t0;
    double dt = std::min(dt_initial, t1 - t0);
    while (t < t1) {
        const bool last = t + dt >= t1;
        const double h = last ? t1 - t : dt;
        const double err = stepper.attempt(t, y, h, tol);
        if (err <= 1.0) {
            y = stepper.proposal();
            stepper.accept();
            t = last ? t1 : t + h;
            result.last_dt = h;
            ++result.steps;
        }
        dt = h * DormandPrince::step_factor(err);
        if (dt < dt_min && t < t1) {
            result.ok = false;
            return result;
        }
    }
    return result;
}

}  // namespace muwave
