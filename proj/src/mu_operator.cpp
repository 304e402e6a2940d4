#include "muwave/mu_operator.hpp"

#include "spectral_ops.hpp"

#include <array>
#include <cmath>

namespace muwave {

using detail::two_pi;

namespace {

// A function on [0, 1] held as a polynomial in x plus a zero-mean periodic
// part. Closed under x -> int_0^x, which lets the nested cumulative
// integrals of the inversion formula be formed exactly mode by mode.
class PolyPeriodic {
public:
    PolyPeriodic(const PeriodicGrid& grid, std::vector<double> poly, Spectrum periodic)
        : grid_(grid), poly_(std::move(poly)), periodic_(std::move(periodic))
    {
    }

    static PolyPeriodic from_field(const PeriodicField& w)
    {
        Spectrum c = to_spectrum(w);
        const double avg = c[0].real();
        c[0] = 0.0;
        return PolyPeriodic(w.grid(), {avg}, std::move(c));
    }

    /// x -> int_0^x of this function.
    PolyPeriodic cumulative() const
    {
        std::vector<double> poly(poly_.size() + 1, 0.0);
        for (std::size_t p = 0; p < poly_.size(); ++p)
            poly[p + 1] = poly_[p] / static_cast<double>(p + 1);
        Spectrum prim = detail::primitive_modes(periodic_, grid_.size());
        poly[0] -= detail::value_at_origin(prim, grid_.size());
        return PolyPeriodic(grid_, std::move(poly), std::move(prim));
    }

    /// int_0^1 of this function.
    double total() const
    {
        double s = 0.0;
        for (std::size_t p = 0; p < poly_.size(); ++p)
            s += poly_[p] / static_cast<double>(p + 1);
        return s;
    }

    PeriodicField sample() const
    {
        PeriodicField out = from_spectrum(grid_, periodic_);
        for (int j = 0; j < grid_.size(); ++j) {
            const double x = grid_.point(j);
            double acc = 0.0;
            for (std::size_t p = poly_.size(); p-- > 0;)
                acc = acc * x + poly_[p];
            out[j] += acc;
        }
        return out;
    }

private:
    PeriodicGrid grid_;
    std::vector<double> poly_;
    Spectrum periodic_;
};

PeriodicField invert_closed_form(const PeriodicField& w)
{
    const PeriodicGrid& grid = w.grid();
    const PolyPeriodic once = PolyPeriodic::from_field(w).cumulative();  // int_0^x w
    const PolyPeriodic twice = once.cumulative();                       // int_0^x int_0^y w

    const double mu_w = mean(w);
    const double c_once = once.total();
    const double c_twice = twice.total();
    PeriodicField v = -twice.sample();
    for (int j = 0; j < grid.size(); ++j) {
        const double x = grid.point(j);
        v[j] += (0.5 * x * x - 0.5 * x + 13.0 / 12.0) * mu_w + (x - 0.5) * c_once + c_twice;
    }
    return v;
}

PeriodicField ainv_dx_closed_form(const PeriodicField& w)
{
    const PeriodicGrid& grid = w.grid();
    const PolyPeriodic once = PolyPeriodic::from_field(w).cumulative();
    const double mu_w = mean(w);
    const double c_once = once.total();
    PeriodicField v = -once.sample();
    for (int j = 0; j < grid.size(); ++j)
        v[j] += (grid.point(j) - 0.5) * mu_w + c_once;
    return v;
}

PeriodicField invert_fourier(const PeriodicField& w)
{
    Spectrum c = to_spectrum(w);
    for (std::size_t k = 1; k < c.size(); ++k) {
        const double kk = two_pi * static_cast<double>(k);
        c[k] /= kk * kk;
    }
    return from_spectrum(w.grid(), c);
}

PeriodicField ainv_dx_fourier(const PeriodicField& w)
{
    Spectrum c = to_spectrum(w);
    const int nyq = w.grid().nyquist();
    c[0] = 0.0;
    for (int k = 1; k < nyq; ++k) {
        // 2 pi i k / (4 pi^2 k^2) = i / (2 pi k)
        c[static_cast<std::size_t>(k)] *= std::complex<double>(0.0, 1.0 / (two_pi * k));
    }
    c[static_cast<std::size_t>(nyq)] = 0.0;
    return from_spectrum(w.grid(), c);
}

double green_poly(double s) { return 0.5 * s * (s - 1.0) + 13.0 / 12.0; }

}  // namespace

double green(double x)
{
    const double s = x - std::floor(x);
    return green_poly(s);
}

double green_prime(double x)
{
    const double s = x - std::floor(x);
    return s == 0.0 ? 0.0 : s - 0.5;
}

PeriodicField apply_A(const PeriodicField& u)
{
    require_finite(u, "apply_A");
    PeriodicField m = -derivative(u, 2);
    m += mean(u);
    return m;
}

PeriodicField invert_A(const PeriodicField& w, InverseMethod method)
{
    require_finite(w, "invert_A");
    switch (method) {
    case InverseMethod::closed_form:
        return invert_closed_form(w);
    case InverseMethod::green_convolution:
        return green_convolve(w, green_poly);
    case InverseMethod::fourier:
        return invert_fourier(w);
    }
    throw PreconditionError("unknown inverse method");
}

PeriodicField ainv_dx(const PeriodicField& w, InverseMethod method)
{
    require_finite(w, "ainv_dx");
    switch (method) {
    case InverseMethod::closed_form:
        return ainv_dx_closed_form(w);
    case InverseMethod::green_convolution:
        // A^{-1} d/dx w = g' * w; the kernel s - 1/2 jumps across s = 0.
        return green_convolve(w, [](double s) { return s - 0.5; });
    case InverseMethod::fourier:
        return ainv_dx_fourier(w);
    }
    throw PreconditionError("unknown inverse method");
}

PeriodicField ainv_dxx(const PeriodicField& w)
{
    require_finite(w, "ainv_dxx");
    PeriodicField v = -w;
    v += mean(w);
    return v;
}

namespace detail {

double gregory_integral(std::span<const double> f, double h)
{
    // Gregory end corrections through twelfth differences.
    static constexpr std::array<double, 12> gamma = {
        1.0 / 12.0,
        1.0 / 24.0,
        19.0 / 720.0,
        3.0 / 160.0,
        863.0 / 60480.0,
        275.0 / 24192.0,
        33953.0 / 3628800.0,
        8183.0 / 1036800.0,
        3250433.0 / 479001600.0,
        4671.0 / 788480.0,
        13695779093.0 / 2615348736000.0,
        2224234463.0 / 475517952000.0,
    };
    const std::size_t last = f.size() - 1;
    double s = 0.0;
    for (std::size_t j = 1; j < last; ++j)
        s += f[j];
    s += 0.5 * (f[0] + f[last]);

    // Forward differences at the left end, backward differences at the right.
    std::array<double, gamma.size() + 1> fwd{};
    std::array<double, gamma.size() + 1> bwd{};
    for (std::size_t j = 0; j < fwd.size(); ++j) {
        fwd[j] = f[j];
        bwd[j] = f[last - j];
    }
    double correction = 0.0;
    for (std::size_t order = 1; order <= gamma.size(); ++order) {
        for (std::size_t j = 0; j + order < fwd.size(); ++j) {
            fwd[j] = fwd[j + 1] - fwd[j];
            bwd[j] = bwd[j] - bwd[j + 1];
        }
        const double d0 = fwd[0];
        const double dn = bwd[0];
        correction += gamma[order - 1] * (order % 2 == 1 ? dn - d0 : dn + d0);
    }
    return h * (s - correction);
}

}  // namespace detail

}  // namespace muwave
