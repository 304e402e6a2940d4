#pragma once

// The nonlocal operator A = mu - d^2/dx^2 on the unit circle, its inverse,
// and the composites A^{-1} d/dx and A^{-1} d^2/dx^2.
//
// Every inverse has three independent realizations so they can be checked
// against each other:
//   closed_form        nested cumulative integrals of w, as in the explicit
//                      inversion formula for A
//   green_convolution  circular convolution with the Green's function g (or
//                      g' for A^{-1} d/dx), end-corrected trapezoid quadrature
//   fourier            mode-wise symbol: 1 at k = 0, 1/(4 pi^2 k^2) otherwise

#include "muwave/field.hpp"

namespace muwave {

enum class InverseMethod { closed_form, green_convolution, fourier };

/// g(x) = x(x-1)/2 + 13/12 for x reduced into [0, 1).
double green(double x);

/// g'(x) = x - 1/2 on (0, 1), with g'(0) = 0.
double green_prime(double x);

/// m = mu(u) - u_xx.
PeriodicField apply_A(const PeriodicField& u);

PeriodicField invert_A(const PeriodicField& w, InverseMethod method = InverseMethod::fourier);

/// A^{-1} d/dx w. The fourier path uses the symbol 2 pi i k / (4 pi^2 k^2).
PeriodicField ainv_dx(const PeriodicField& w, InverseMethod method = InverseMethod::closed_form);

/// A^{-1} d^2/dx^2 w = -w + mean(w).
PeriodicField ainv_dxx(const PeriodicField& w);

/// Circular convolution int_S kernel((x - y) mod 1) w(y) dy, where kernel is
/// smooth on [0, 1] and may kink or jump across x = y. Each output point uses
/// a trapezoid rule with Gregory end corrections through twelfth differences
/// on the cell [x_i, x_i + 1].
template <class Kernel>
PeriodicField green_convolve(const PeriodicField& w, Kernel&& kernel);

namespace detail {
double gregory_integral(std::span<const double> samples_with_wrap, double h);
}

template <class Kernel>
PeriodicField green_convolve(const PeriodicField& w, Kernel&& kernel)
{
    const int n = w.size();
    const double h = w.grid().spacing();
    std::vector<double> kern(static_cast<std::size_t>(n + 1));
    // Node y = x_i + j h sees the kernel at s = 1 - j h (one-sided limits at
    // both ends of the cell).
    for (int j = 0; j <= n; ++j)
        kern[static_cast<std::size_t>(j)] = kernel(1.0 - j * h);

    PeriodicField out(w.grid());
    std::vector<double> f(static_cast<std::size_t>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= n; ++j)
            f[static_cast<std::size_t>(j)] = kern[static_cast<std::size_t>(j)] * w[(i + j) % n];
        out[i] = detail::gregory_integral(f, h);
    }
    return out;
}

}  // namespace muwave
