#include "muwave/field.hpp"

#include "fft.hpp"
#include "spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace muwave {

using detail::two_pi;

PeriodicGrid::PeriodicGrid(int n) : n_(n)
{
    if (n < 8 || n % 2 != 0)
        throw PreconditionError("grid size must be even and >= 8, got " + std::to_string(n));
}

PeriodicField::PeriodicField(PeriodicGrid grid, double value)
    : grid_(grid), values_(static_cast<std::size_t>(grid.size()), value)
{
}

PeriodicField::PeriodicField(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values))
{
    if (static_cast<int>(values_.size()) != grid_.size())
        throw PreconditionError("sample count " + std::to_string(values_.size()) +
                                " does not match grid size " + std::to_string(grid_.size()));
}

bool PeriodicField::is_finite() const noexcept
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double PeriodicField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double PeriodicField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double PeriodicField::sup_norm() const
{
    double s = 0.0;
    for (double v : values_)
        s = std::max(s, std::abs(v));
    return s;
}

void PeriodicField::require_same_grid(const PeriodicField& other) const
{
    if (!(grid_ == other.grid_))
        throw PreconditionError("fields live on different grids (" + std::to_string(grid_.size()) + " vs " +
                                std::to_string(other.grid_.size()) + ")");
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& other)
{
    require_same_grid(other);
    for (std::size_t j = 0; j < values_.size(); ++j)
        values_[j] += other.values_[j];
    return *this;
}

PeriodicField& PeriodicField::operator-=(const PeriodicField& other)
{
    require_same_grid(other);
    for (std::size_t j = 0; j < values_.size(); ++j)
        values_[j] -= other.values_[j];
    return *this;
}

PeriodicField& PeriodicField::operator*=(const PeriodicField& other)
{
    require_same_grid(other);
    for (std::size_t j = 0; j < values_.size(); ++j)
        values_[j] *= other.values_[j];
    return *this;
}

PeriodicField& PeriodicField::operator+=(double c)
{
    for (auto& v : values_)
        v += c;
    return *this;
}

PeriodicField& PeriodicField::operator*=(double c)
{
    for (auto& v : values_)
        v *= c;
    return *this;
}

PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
PeriodicField operator*(PeriodicField a, const PeriodicField& b) { return a *= b; }
PeriodicField operator*(double c, PeriodicField a) { return a *= c; }
PeriodicField operator*(PeriodicField a, double c) { return a *= c; }
PeriodicField operator+(PeriodicField a, double c) { return a += c; }
PeriodicField operator+(double c, PeriodicField a) { return a += c; }
PeriodicField operator-(PeriodicField a, double c) { return a += -c; }
PeriodicField operator-(double c, PeriodicField a) { return (a *= -1.0) += c; }
PeriodicField operator-(PeriodicField a) { return a *= -1.0; }

void require_finite(const PeriodicField& f, const char* what)
{
    if (!f.is_finite())
        throw CorruptionError(std::string(what) + ": field contains non-finite samples");
}

double sup_distance(const PeriodicField& a, const PeriodicField& b) { return (a - b).sup_norm(); }

Spectrum to_spectrum(const PeriodicField& f)
{
    Spectrum c(static_cast<std::size_t>(f.size() / 2 + 1));
    detail::forward_real(f.values(), c);
    return c;
}

PeriodicField from_spectrum(const PeriodicGrid& grid, const Spectrum& c)
{
    std::vector<double> v(static_cast<std::size_t>(grid.size()));
    detail::inverse_real(c, v);
    return PeriodicField(grid, std::move(v));
}

PeriodicField derivative(const PeriodicField& f, int order)
{
    if (order < 1 || order > 3)
        throw PreconditionError("derivative order must be 1, 2 or 3");
    require_finite(f, "derivative");

    const int nyq = f.grid().nyquist();
    Spectrum c = to_spectrum(f);
    for (int k = 0; k <= nyq; ++k) {
        const std::complex<double> ik(0.0, two_pi * k);
        std::complex<double> symbol = ik;
        for (int p = 1; p < order; ++p)
            symbol *= ik;
        c[static_cast<std::size_t>(k)] *= symbol;
    }
    if (order % 2 == 1)
        c[static_cast<std::size_t>(nyq)] = 0.0;
    return from_spectrum(f.grid(), c);
}

double mean(const PeriodicField& f)
{
    require_finite(f, "mean");
    const auto v = f.values();
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double integrate(const PeriodicField& f) { return mean(f); }

Primitive antiderivative(const PeriodicField& f, ConstantRule rule)
{
    require_finite(f, "antiderivative");
    const PeriodicGrid& grid = f.grid();
    const int n = grid.size();

    const Spectrum c = to_spectrum(f);
    const double avg = c[0].real();
    PeriodicField out = from_spectrum(grid, detail::primitive_modes(c, n));

    const bool periodic = std::abs(avg) <= 1e-10 * std::max(1.0, f.sup_norm());
    if (!periodic) {
        for (int j = 0; j < n; ++j)
            out[j] += avg * grid.point(j);
    }

    // `out` currently has the periodic part with zero mean plus avg * x.
    double shift = 0.0;
    switch (rule.kind()) {
    case ConstantRule::Kind::zero_at_origin:
        shift = -out[0];
        break;
    case ConstantRule::Kind::zero_mean:
        shift = -mean(out);
        break;
    case ConstantRule::Kind::value_at_origin:
        shift = rule.value() - out[0];
        break;
    }
    out += shift;
    return {std::move(out), periodic};
}

double resolvedness(const PeriodicField& f)
{
    require_finite(f, "resolvedness");
    const Spectrum c = to_spectrum(f);
    const int nyq = f.grid().nyquist();
    const int cutoff = (2 * nyq) / 3;
    double total = 0.0;
    double top = 0.0;
    for (int k = 1; k <= nyq; ++k) {
        const double e = std::norm(c[static_cast<std::size_t>(k)]);
        total += e;
        if (k > cutoff)
            top += e;
    }
    if (total == 0.0)
        return 1.0;
    return std::clamp(1.0 - top / total, 0.0, 1.0);
}

TrigInterpolant::TrigInterpolant(const PeriodicField& f) : n_(f.size()), c_(to_spectrum(f)) {}

TrigInterpolant::TrigInterpolant(const PeriodicGrid& grid, Spectrum coeffs) : n_(grid.size()), c_(std::move(coeffs))
{
    if (static_cast<int>(c_.size()) != n_ / 2 + 1)
        throw PreconditionError("spectrum length does not match grid");
}

double TrigInterpolant::operator()(double x) const { return value_and_slope(x).first; }

std::pair<double, double> TrigInterpolant::value_and_slope(double x) const
{
    const int nyq = n_ / 2;
    const double theta = two_pi * (x - std::floor(x));
    const std::complex<double> step(std::cos(theta), std::sin(theta));
    std::complex<double> e = 1.0;
    double value = c_[0].real();
    double slope = 0.0;
    for (int k = 1; k < nyq; ++k) {
        // Re-anchor the rotation periodically to keep the recurrence error flat.
        if (k % 64 == 0)
            e = std::polar(1.0, theta * (k - 1));
        e *= step;
        const std::complex<double> term = c_[static_cast<std::size_t>(k)] * e;
        value += 2.0 * term.real();
        slope += -2.0 * two_pi * k * term.imag();
    }
    // Nyquist mode: cos(pi n x) component, no slope contribution on the
    // grid convention used by derivative().
    value += c_[static_cast<std::size_t>(nyq)].real() * std::cos(theta * nyq);
    return {value, slope};
}

}  // namespace muwave
