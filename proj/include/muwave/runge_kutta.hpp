#pragma once

// Dormand-Prince 5(4) embedded pair with first-same-as-last reuse and a
// proportional step-size controller.

#include <functional>
#include <utility>
#include <vector>

namespace muwave {

struct StepTolerance {
    double rel = 1e-8;
    double abs = 1e-10;
};

class DormandPrince {
public:
    using State = std::vector<double>;
    using Rhs = std::function<void(double t, const State& y, State& dydt)>;

    explicit DormandPrince(Rhs rhs);

    /// Trial step from (t, y) of size dt. Returns the weighted sup-norm of
    /// the embedded error estimate (<= 1 means acceptable); +inf when the
    /// trial produced non-finite values. The trial state is in proposal().
    double attempt(double t, const State& y, double dt, const StepTolerance& tol);

    const State& proposal() const noexcept { return y_new_; }

    /// Marks the last attempt as accepted so its final stage is reused as
    /// the first stage of the next step. Successive attempts must start from
    /// the last accepted proposal (or follow a reset()).
    void accept() noexcept { fsal_valid_ = true; std::swap(k_[0], k_[6]); }

    /// Drops the cached first stage (call when y changes outside the stepper).
    void reset() noexcept { fsal_valid_ = false; }

    long rhs_evaluations() const noexcept { return evaluations_; }

    /// Proportional controller: 0.9 err^{-1/5}, clipped to [0.2, 5].
    static double step_factor(double err);

private:
    Rhs rhs_;
    std::vector<State> k_;
    State stage_;
    State y_new_;
    bool fsal_valid_ = false;
    long evaluations_ = 0;
};

struct AdaptiveResult {
    bool ok = true;         ///< false if the step size fell below dt_min
    double last_dt = 0.0;   ///< size of the last accepted step
    int steps = 0;
};

/// Advances y from t0 to exactly t1 with adaptive steps.
AdaptiveResult integrate_adaptive(const DormandPrince::Rhs& rhs, double t0, double t1, std::vector<double>& y,
                                  double dt_initial, const StepTolerance& tol, double dt_min = 1e-14);

}  // namespace muwave
