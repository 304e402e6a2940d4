#pragma once

#include "muwave/field.hpp"

namespace muwave {

/// Family parameter and the invariants of the initial datum. mu0, mu1, mu2
/// are frozen from u0 and never recomputed from evolved states.
struct ModelParams {
    double lambda = 2.0;  ///< 2 = muCH, 3 = muDP
    double mu0 = 0.0;     ///< mean of u0
    double mu1 = 0.0;     ///< ||u0_x||_{L^2}
    double mu2 = 0.0;     ///< ||u0||_{L^2}

    static ModelParams from_initial(const PeriodicField& u0, double lambda);
};

}  // namespace muwave
