#pragma once

// Periodic grids, sampled fields on the unit circle S = R/Z, and the
// spectral calculus (derivative, antiderivative, quadrature, trigonometric
// interpolation) that every other module is built on.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace muwave {

/// Raised when a field contains NaN or Inf samples.
class CorruptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an operation's input contract is violated (mismatched grids,
/// nonzero mean where a zero-mean field is required, bad parameters).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform grid x_j = j/n, j = 0..n-1 on the unit circle. n is even and >= 8.
class PeriodicGrid {
public:
    explicit PeriodicGrid(int n);

    int size() const noexcept { return n_; }
    double spacing() const noexcept { return 1.0 / n_; }
    double point(int j) const noexcept { return static_cast<double>(j) / n_; }
    /// Index of the Nyquist mode, n/2.
    int nyquist() const noexcept { return n_ / 2; }

    friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;

private:
    int n_;
};

class PeriodicField {
public:
    explicit PeriodicField(PeriodicGrid grid, double value = 0.0);
    PeriodicField(PeriodicGrid grid, std::vector<double> values);

    /// Samples f(x_j) on the grid.
    template <class F>
    static PeriodicField sample(PeriodicGrid grid, F&& f)
    {
        std::vector<double> v(static_cast<std::size_t>(grid.size()));
        for (int j = 0; j < grid.size(); ++j)
            v[static_cast<std::size_t>(j)] = f(grid.point(j));
        return PeriodicField(grid, std::move(v));
    }

    const PeriodicGrid& grid() const noexcept { return grid_; }
    int size() const noexcept { return grid_.size(); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    const std::vector<double>& data() const noexcept { return values_; }

    double operator[](int j) const noexcept { return values_[static_cast<std::size_t>(j)]; }
    double& operator[](int j) noexcept { return values_[static_cast<std::size_t>(j)]; }

    bool is_finite() const noexcept;
    double min() const;
    double max() const;
    double sup_norm() const;

    PeriodicField& operator+=(const PeriodicField& other);
    PeriodicField& operator-=(const PeriodicField& other);
    PeriodicField& operator*=(const PeriodicField& other);
    PeriodicField& operator+=(double c);
    PeriodicField& operator*=(double c);

private:
    void require_same_grid(const PeriodicField& other) const;

    PeriodicGrid grid_;
    std::vector<double> values_;
};

PeriodicField operator+(PeriodicField a, const PeriodicField& b);
PeriodicField operator-(PeriodicField a, const PeriodicField& b);
PeriodicField operator*(PeriodicField a, const PeriodicField& b);
PeriodicField operator*(double c, PeriodicField a);
PeriodicField operator*(PeriodicField a, double c);
PeriodicField operator+(PeriodicField a, double c);
PeriodicField operator+(double c, PeriodicField a);
PeriodicField operator-(PeriodicField a, double c);
PeriodicField operator-(double c, PeriodicField a);
PeriodicField operator-(PeriodicField a);

/// Throws CorruptionError naming `what` if any sample is non-finite.
void require_finite(const PeriodicField& f, const char* what);

double sup_distance(const PeriodicField& a, const PeriodicField& b);

/// Normalized discrete Fourier coefficients c_k, k = 0..n/2, with
/// f(x_j) = sum_k c_k e^{2 pi i k x_j} over the symmetric band.
using Spectrum = std::vector<std::complex<double>>;

Spectrum to_spectrum(const PeriodicField& f);
PeriodicField from_spectrum(const PeriodicGrid& grid, const Spectrum& c);

/// Spectral derivative of order 1, 2 or 3. The Nyquist mode is zeroed for
/// odd orders.
PeriodicField derivative(const PeriodicField& f, int order = 1);

/// Trapezoid quadrature over the period; on the uniform grid this is the
/// plain average of the samples.
double mean(const PeriodicField& f);

/// Integral over S. The period has unit length, so this equals mean().
double integrate(const PeriodicField& f);

/// How the free constant of an antiderivative is fixed.
class ConstantRule {
public:
    enum class Kind { zero_at_origin, zero_mean, value_at_origin };

    static ConstantRule zero_at_origin() { return ConstantRule(Kind::zero_at_origin, 0.0); }
    static ConstantRule zero_mean() { return ConstantRule(Kind::zero_mean, 0.0); }
    /// F(0) = c.
    static ConstantRule explicit_value(double c) { return ConstantRule(Kind::value_at_origin, c); }

    Kind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }

private:
    ConstantRule(Kind k, double v) : kind_(k), value_(v) {}
    Kind kind_;
    double value_;
};

struct Primitive {
    PeriodicField values;
    /// False when f had a nonzero mean; `values` is then the cumulative
    /// integral int_0^x f, which grows by mean(f) per period.
    bool periodic;
};

/// Spectral antiderivative of the zero-mean part plus the explicit linear
/// term mean(f) * x.
Primitive antiderivative(const PeriodicField& f, ConstantRule rule);

/// 1 - (fraction of the nonconstant-mode energy of f that sits in the top
/// third of the resolved band). Equals 1 for constant fields.
double resolvedness(const PeriodicField& f);

/// Evaluates the trigonometric interpolant of a field (and its slope) at
/// arbitrary points. Exact at grid points.
class TrigInterpolant {
public:
    explicit TrigInterpolant(const PeriodicField& f);
    TrigInterpolant(const PeriodicGrid& grid, Spectrum coeffs);

    double operator()(double x) const;
    /// (value, d/dx value) at x.
    std::pair<double, double> value_and_slope(double x) const;

private:
    int n_;
    Spectrum c_;
};

}  // namespace muwave
