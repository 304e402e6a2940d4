#pragma once

// Thin wrapper over FFTW real transforms. Plans are cached per size and
// created under a lock; execution uses the new-array interface and is safe
// from concurrent threads.

#include <complex>
#include <span>

namespace muwave::detail {

/// out[k] = (1/n) sum_j in[j] e^{-2 pi i k j / n}, k = 0..n/2.
void forward_real(std::span<const double> in, std::span<std::complex<double>> out);

/// Inverse of forward_real (no extra scaling). `in` has n/2+1 entries.
void inverse_real(std::span<const std::complex<double>> in, std::span<double> out);

}  // namespace muwave::detail
