#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muwave/field.hpp"
#include "test_support.hpp"

#include <limits>

using namespace muwave;
using muwave::testing::pi;

TEST_CASE("grid rejects odd or tiny sizes")
{
    CHECK_THROWS_AS(PeriodicGrid(7), PreconditionError);
    CHECK_THROWS_AS(PeriodicGrid(6), PreconditionError);
    CHECK_THROWS_AS(PeriodicGrid(-8), PreconditionError);
    const PeriodicGrid g(8);
    CHECK(g.spacing() == 0.125);
    CHECK(g.point(7) == 0.875);
    CHECK(g.nyquist() == 4);
}

TEST_CASE("fields on different grids do not combine")
{
    PeriodicField a(PeriodicGrid(8), 1.0);
    const PeriodicField b(PeriodicGrid(16), 1.0);
    CHECK_THROWS_AS(a += b, PreconditionError);
    CHECK_THROWS_AS((void)(a * b), PreconditionError);
}

TEST_CASE("derivative of sine and constants")
{
    const PeriodicGrid g(64);
    const auto s = testing::sine(g);
    const auto expected1 = testing::cosine(g, 1, 2 * pi);
    CHECK(sup_distance(derivative(s, 1), expected1) <= 1e-12);
    CHECK(derivative(PeriodicField(g, 5.0), 1).sup_norm() <= 1e-14);
    const auto expected2 = testing::sine(g, 1, -4 * pi * pi);
    CHECK(sup_distance(derivative(s, 2), expected2) <= 1e-10);
    const auto expected3 = testing::cosine(g, 1, -8 * pi * pi * pi);
    CHECK(sup_distance(derivative(s, 3), expected3) <= 1e-11 * 8 * pi * pi * pi);
}

TEST_CASE("derivative rejects bad order and corrupted input")
{
    const PeriodicGrid g(16);
    PeriodicField f(g, 1.0);
    CHECK_THROWS_AS(derivative(f, 0), PreconditionError);
    CHECK_THROWS_AS(derivative(f, 4), PreconditionError);
    f[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(derivative(f, 1), CorruptionError);
    CHECK_FALSE(f.is_finite());
}

TEST_CASE("odd derivatives drop the Nyquist mode, even ones keep it")
{
    const PeriodicGrid g(16);
    const auto alt = PeriodicField::sample(g, [](double x) { return std::cos(16 * pi * x); });
    CHECK(derivative(alt, 1).sup_norm() <= 1e-12);
    CHECK(derivative(alt, 3).sup_norm() <= 1e-8);
    const auto second = derivative(alt, 2);
    CHECK(second[0] == doctest::Approx(-256 * pi * pi).epsilon(1e-12));
}

TEST_CASE("mean and integrate")
{
    const PeriodicGrid g(64);
    CHECK(mean(PeriodicField(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(mean(testing::sine(g))) <= 1e-14);
    for (int k = 1; k < 32; ++k)
        CHECK(std::abs(mean(testing::cosine(g, k))) <= 1e-14);
    // Peakon profile (1/26)(12 y^2 + 23) on the chart y in [-1/2, 1/2).
    const PeriodicGrid fine(4096);
    const auto phi = PeriodicField::sample(fine, [](double x) {
        const double y = x < 0.5 ? x : x - 1.0;
        return (12 * y * y + 23) / 26.0;
    });
    // The profile is continuous with a slope jump, so the trapezoid error is
    // O(h^2).
    CHECK(mean(phi) == doctest::Approx(12.0 / 13.0).epsilon(1e-7));
    CHECK(integrate(phi) == mean(phi));
}

TEST_CASE("antiderivative constant rules")
{
    const PeriodicGrid g(64);
    const auto c = testing::cosine(g);
    const auto f = antiderivative(c, ConstantRule::zero_at_origin());
    CHECK(f.periodic);
    CHECK(sup_distance(f.values, testing::sine(g, 1, 1 / (2 * pi))) <= 1e-14);

    const auto z = antiderivative(PeriodicField(g, 0.0), ConstantRule::zero_mean());
    CHECK(z.values.sup_norm() == 0.0);

    const auto s = testing::cosine(g, 1, 1.0, 0.7);
    const auto zm = antiderivative(s - mean(s), ConstantRule::zero_mean());
    CHECK(std::abs(mean(zm.values)) <= 1e-15);
}

TEST_CASE("antiderivative reconstructs u from its slope with an explicit constant")
{
    const PeriodicGrid g(128);
    std::mt19937_64 rng(11);
    const auto u = testing::random_band_limited(g, rng, 8, 0.3);
    const auto neg_ux = -derivative(u, 1);
    const auto back = antiderivative(neg_ux, ConstantRule::explicit_value(-u[0]));
    CHECK(back.periodic);
    CHECK(sup_distance(back.values, -u) <= 1e-12);
}

TEST_CASE("antiderivative of a field with nonzero mean is cumulative and flagged")
{
    const PeriodicGrid g(64);
    const auto f = testing::cosine(g, 1, 1.0, 2.0);
    const auto F = antiderivative(f, ConstantRule::zero_at_origin());
    CHECK_FALSE(F.periodic);
    for (int j = 0; j < g.size(); ++j) {
        const double x = g.point(j);
        CHECK(F.values[j] == doctest::Approx(2 * x + std::sin(2 * pi * x) / (2 * pi)).epsilon(1e-13));
    }
}

TEST_CASE("derivative inverts antiderivative on zero-mean band-limited fields")
{
    const PeriodicGrid g(64);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = testing::random_band_limited(g, rng, 16);
        for (const auto rule : {ConstantRule::zero_at_origin(), ConstantRule::zero_mean(),
                                ConstantRule::explicit_value(1.5)}) {
            CHECK(sup_distance(derivative(antiderivative(f, rule).values, 1), f) <= 1e-10);
        }
    }
}

TEST_CASE("calculus is linear")
{
    const PeriodicGrid g(128);
    std::mt19937_64 rng(21);
    const auto f = testing::random_band_limited(g, rng);
    const auto h = testing::random_band_limited(g, rng);
    const double a = 1.7, b = -0.4;
    const auto combo = a * f + b * h;
    CHECK(sup_distance(derivative(combo, 1), a * derivative(f, 1) + b * derivative(h, 1)) <= 1e-12);
    CHECK(mean(combo) == doctest::Approx(a * mean(f) + b * mean(h)).epsilon(1e-14).scale(1));
    const auto rule = ConstantRule::zero_mean();
    CHECK(sup_distance(antiderivative(combo, rule).values,
                       a * antiderivative(f, rule).values + b * antiderivative(h, rule).values) <= 1e-14);
}

TEST_CASE("resolvedness")
{
    const PeriodicGrid g(64);
    CHECK(resolvedness(PeriodicField(g, 3.0)) == 1.0);
    CHECK(resolvedness(testing::sine(g)) == doctest::Approx(1.0));
    CHECK(resolvedness(testing::sine(g, 30)) == doctest::Approx(0.0));
    const auto mix = testing::sine(g) + testing::sine(g, 30);
    CHECK(resolvedness(mix) == doctest::Approx(0.5));
}

TEST_CASE("trigonometric interpolation is exact for resolved modes")
{
    const PeriodicGrid g(32);
    std::mt19937_64 rng(3);
    const int modes = 10;
    std::vector<double> a(modes + 1), b(modes + 1);
    std::uniform_real_distribution<double> d(-1, 1);
    for (int k = 0; k <= modes; ++k) {
        a[k] = d(rng);
        b[k] = d(rng);
    }
    auto f = [&](double x) {
        double v = a[0];
        for (int k = 1; k <= modes; ++k)
            v += a[k] * std::cos(2 * pi * k * x) + b[k] * std::sin(2 * pi * k * x);
        return v;
    };
    auto fx = [&](double x) {
        double v = 0;
        for (int k = 1; k <= modes; ++k)
            v += 2 * pi * k * (-a[k] * std::sin(2 * pi * k * x) + b[k] * std::cos(2 * pi * k * x));
        return v;
    };
    const TrigInterpolant interp(PeriodicField::sample(g, f));
    for (double x : {0.0, 0.013, 0.31, 0.5, 0.77, 0.999, 1.4, -0.2}) {
        const auto [v, s] = interp.value_and_slope(x);
        CHECK(v == doctest::Approx(f(x)).epsilon(1e-12).scale(10));
        CHECK(s == doctest::Approx(fx(x)).epsilon(1e-11).scale(100));
    }
}
