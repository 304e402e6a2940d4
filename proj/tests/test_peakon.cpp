#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muwave/mu_operator.hpp"
#include "muwave/peakon.hpp"
#include "test_support.hpp"

using namespace muwave;

// Thresholds from the refinement study at exclusion 0.1 (c = 1):
//   n      residual   m-flatness
//   256    1.33e-6    0.181
//   1024   8.25e-8    0.0461
//   4096   5.13e-9    0.0116
// The residual converges at second order, the corner tail at first order.
constexpr double residual_tol_1024 = 2e-7;
constexpr double flatness_tol_1024 = 0.1;

TEST_CASE("one-peakon samples")
{
    const PeriodicGrid g(1024);
    const double c = 1.7;
    const auto phi = one_peakon(c, g);
    CHECK(phi[0] == doctest::Approx(23 * c / 26).epsilon(1e-15));
    CHECK(phi[512] == doctest::Approx(c).epsilon(1e-15));
    CHECK(phi.max() == doctest::Approx(c).epsilon(1e-15));
    // Trapezoid on a kinked periodic profile is second order.
    CHECK(mean(phi) == doctest::Approx(12 * c / 13).epsilon(1e-6));
    CHECK(mean(one_peakon(c, PeriodicGrid(8192))) == doctest::Approx(12 * c / 13).epsilon(1e-8));
    CHECK(one_peakon(0.0, g).sup_norm() == 0.0);
}

TEST_CASE("one-peakon slope")
{
    CHECK(one_peakon_slope(1.0, 0.25) == doctest::Approx(3.0 / 13.0));
    CHECK(one_peakon_slope(1.0, 0.75) == doctest::Approx(-3.0 / 13.0));
    CHECK(one_peakon_slope(1.0, 0.5) == 0.0);
    CHECK(one_peakon_slope(2.0, 1.25) == doctest::Approx(6.0 / 13.0));
}

TEST_CASE("config validation")
{
    PeakonConfig cfg;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg.p = {1.0};
    cfg.q = {0.2, 0.3};
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg.q = {1.0};
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg.q = {0.0};
    CHECK_NOTHROW(cfg.validate());
    cfg.s = {1.0, 2.0};
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
}

TEST_CASE("single peakon field reproduces the shifted one-peakon")
{
    const PeriodicGrid g(256);
    const double c = 1.3, q = 0.3;
    PeakonConfig cfg;
    cfg.p = {12 * c / 13};
    cfg.q = {q};
    const auto field = multipeakon_field(cfg, g);
    const auto shifted = PeriodicField::sample(g, [&](double x) {
        double y = x - q + 0.5;
        y -= std::floor(y + 0.5);
        return c / 26 * (12 * y * y + 23);
    });
    CHECK(sup_distance(field, shifted) <= 1e-14);
}

TEST_CASE("multipeakon mean and zero amplitudes")
{
    const PeriodicGrid g(4096);
    PeakonConfig cfg;
    cfg.p = {0.5, -1.25, 2.0};
    cfg.q = {0.1, 0.45, 0.8};
    CHECK(mean(multipeakon_field(cfg, g)) == doctest::Approx(1.25).epsilon(1e-7));
    cfg.p = {0.0, 0.0, 0.0};
    CHECK(multipeakon_field(cfg, g).sup_norm() == 0.0);
}

TEST_CASE("shockpeakon field")
{
    const PeriodicGrid g(64);
    PeakonConfig cfg;
    cfg.p = {0.7};
    cfg.q = {0.0};
    cfg.s = {1.0};
    const auto f = shockpeakon_field(cfg, g);
    CHECK(f[0] == 0.7 * green(0.0));
    CHECK(f[16] == doctest::Approx(0.7 * green(0.25) + green_prime(0.25)).epsilon(1e-15));

    cfg.p = {0.4, 1.1};
    cfg.q = {0.2, 0.65};
    cfg.s = {0.0, 0.0};
    CHECK(sup_distance(shockpeakon_field(cfg, g), multipeakon_field(cfg, g)) == 0.0);
    cfg.s.clear();
    CHECK(sup_distance(shockpeakon_field(cfg, g), multipeakon_field(cfg, g)) == 0.0);
}

TEST_CASE("off-corner points")
{
    const PeriodicGrid g(16);
    const auto pts = off_corner_points(g, 0.01);
    // The corner sample (j = 8) and its two neighbours are always dropped.
    CHECK(pts.size() == 13);
    for (int j : pts)
        CHECK(std::abs(j - 8) > 1);
    CHECK(off_corner_points(PeriodicGrid(100), 0.2).size() == 59);
}

TEST_CASE("traveling-wave residual converges")
{
    CHECK(traveling_wave_residual(0.0, 256, 0.1) == 0.0);
    CHECK_THROWS_AS(traveling_wave_residual(1.0, 256, 0.0), PreconditionError);
    CHECK_THROWS_AS(traveling_wave_residual(1.0, 256, 0.25), PreconditionError);

    const double coarse = traveling_wave_residual(1.0, 256, 0.1);
    const double fine = traveling_wave_residual(1.0, 1024, 0.1);
    CHECK(fine <= residual_tol_1024);
    CHECK(fine <= coarse / 2);
}

TEST_CASE("residual scaling in c")
{
    // Every term is quadratic in c, so the residual divided by |c| is
    // linear in c.
    const double r1 = traveling_wave_residual(1.0, 512, 0.1);
    const double r2 = traveling_wave_residual(2.0, 512, 0.1);
    CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(0.1));
    CHECK(traveling_wave_residual(-1.0, 512, 0.1) == doctest::Approx(r1).epsilon(0.1));
}

TEST_CASE("momentum of the one-peakon is flat off the corner")
{
    const double coarse = peakon_m_flatness(1.0, 256, 0.1);
    const double fine = peakon_m_flatness(1.0, 1024, 0.1);
    CHECK(fine <= flatness_tol_1024);
    CHECK(fine <= coarse / 2);
    // Compare: at the corner the momentum is of order n.
    const auto m = apply_A(one_peakon(1.0, PeriodicGrid(1024)));
    CHECK(std::abs(m[512]) > 100.0);
}
