#pragma once

// Mode-wise helpers shared by the field and operator implementations.

#include "muwave/field.hpp"

#include <numbers>

namespace muwave::detail {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Zero-mean periodic primitive, mode by mode: c_k / (2 pi i k); the mean
/// and Nyquist modes are dropped.
inline Spectrum primitive_modes(const Spectrum& c, int n)
{
    Spectrum out(c.size());
    const int nyq = n / 2;
    for (int k = 1; k < nyq; ++k)
        out[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] / std::complex<double>(0.0, two_pi * k);
    return out;
}

/// Value of the real trigonometric polynomial with coefficients c at x = 0.
inline double value_at_origin(const Spectrum& c, int n)
{
    const int nyq = n / 2;
    double s = c[0].real();
    for (int k = 1; k < nyq; ++k)
        s += 2.0 * c[static_cast<std::size_t>(k)].real();
    s += c[static_cast<std::size_t>(nyq)].real();
    return s;
}

}  // namespace muwave::detail
