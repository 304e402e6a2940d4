#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muwave/diagnostics.hpp"
#include "muwave/evolution.hpp"
#include "test_support.hpp"

using namespace muwave;
using muwave::testing::pi;

TEST_CASE("model parameters from the initial datum")
{
    const PeriodicGrid g(128);
    const auto p = ModelParams::from_initial(testing::sine(g, 1, 1.0, 0.3), 3.0);
    CHECK(p.lambda == 3.0);
    CHECK(p.mu0 == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(p.mu1 == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-13));
    CHECK(p.mu2 == doctest::Approx(std::sqrt(0.09 + 0.5)).epsilon(1e-13));
}

TEST_CASE("muCH invariants of c + a sin")
{
    const PeriodicGrid g(128);
    const double c = 0.4, a = 0.7;
    const auto h = conserved_mu_ch(testing::sine(g, 1, a, c));
    CHECK(h.H0 == doctest::Approx(c).epsilon(1e-13));
    CHECK(h.H1 == doctest::Approx(0.5 * c * c + pi * pi * a * a).epsilon(1e-12));
    CHECK(h.H2 == doctest::Approx(c * c * c + 0.5 * c * a * a + pi * pi * c * a * a).epsilon(1e-12));
}

TEST_CASE("muDP invariants of c + a sin")
{
    const PeriodicGrid g(128);
    const double c = 0.4, a = 0.7;
    const auto h = conserved_mu_dp(testing::sine(g, 1, a, c));
    CHECK(h.Ht0 == doctest::Approx(-4.5 * c).epsilon(1e-13));
    CHECK(h.Ht1 == doctest::Approx(0.5 * (c * c + 0.5 * a * a)).epsilon(1e-13));
    const double expected = 3.0 * c * a * a / (16 * pi * pi) + (c * c * c + 1.5 * c * a * a) / 6.0;
    CHECK(h.Ht2 == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("Lyapunov functional")
{
    const PeriodicGrid g(64);
    CHECK(std::abs(lyapunov_V(testing::sine(g))) <= 1e-12);
    // u_x = 2 pi sin(2 pi x) + 2 pi cos(4 pi x), so int u_x^3 = -6 pi^3.
    const auto u = PeriodicField::sample(g, [](double x) { return -std::cos(2 * pi * x) + 0.5 * std::sin(4 * pi * x); });
    CHECK(lyapunov_V(u) == doctest::Approx(-6 * pi * pi * pi).epsilon(1e-12));
}

TEST_CASE("slope extrema are refined off the grid")
{
    const PeriodicGrid g(64);
    const double shift = 0.013;
    const auto u = PeriodicField::sample(g, [=](double x) { return std::sin(2 * pi * (x - shift)); });
    const auto e = slope_extrema(u);
    CHECK(e.min == doctest::Approx(-2 * pi).epsilon(1e-12));
    CHECK(e.max == doctest::Approx(2 * pi).epsilon(1e-12));
    CHECK(e.argmin == doctest::Approx(0.5 + shift).epsilon(1e-9));
    // The nearest sample is visibly off.
    CHECK(derivative(u, 1).min() > -2 * pi + 1e-4);
}

TEST_CASE("Sobolev and Wirtinger oracles")
{
    const PeriodicGrid g(128);
    CHECK(sobolev_oracle(testing::sine(g)) == doctest::Approx(pi * pi / 6 - 1).epsilon(1e-12));
    CHECK_THROWS_AS(sobolev_oracle(testing::sine(g, 1, 1.0, 0.1)), PreconditionError);
    CHECK(std::abs(wirtinger_oracle(testing::sine(g))) <= 1e-12);
    CHECK(std::abs(wirtinger_oracle(testing::cosine(g, 1, 3.0))) <= 1e-12);
    CHECK(wirtinger_oracle(testing::sine(g, 2)) == doctest::Approx(1.5).epsilon(1e-12));

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = testing::random_band_limited(g, rng, 6);
        CHECK(sobolev_oracle(f) >= -1e-10);
        CHECK(wirtinger_oracle(f) >= -1e-10);
    }
}

TEST_CASE("a-priori sup bound")
{
    const PeriodicGrid g(128);
    const auto u = testing::sine(g);
    const auto p = ModelParams::from_initial(u, 2.0);
    CHECK(apriori_sup_bound(u, p) == doctest::Approx(std::sqrt(3.0) / 6 * pi * std::sqrt(2.0) - 1).epsilon(1e-12));
}

TEST_CASE("linear growth bound applies to muDP records only")
{
    const PeriodicGrid g(64);
    const auto u0 = testing::sine(g, 1, 0.3, 0.1);
    SolverConfig cfg;
    cfg.t_max = 0.05;
    const auto ch = evolve(u0, ModelParams::from_initial(u0, 2.0), cfg);
    CHECK_FALSE(linear_growth_bound(ch).has_value());
    const auto dp = evolve(u0, ModelParams::from_initial(u0, 3.0), cfg);
    const auto margin = linear_growth_bound(dp);
    REQUIRE(margin.has_value());
    // The initial row has zero margin; later rows must not go below it.
    CHECK(*margin <= 1e-14);
    CHECK(*margin >= -1e-12);
}

TEST_CASE("diagnostics row collects the individual diagnostics")
{
    const PeriodicGrid g(128);
    std::mt19937_64 rng(3);
    const auto u = testing::random_band_limited(g, rng, 5, 0.2);
    const auto row = compute_row(u, 0.25, 1e-3);
    CHECK(row.t == 0.25);
    CHECK(row.dt == 1e-3);
    const auto e = slope_extrema(u);
    CHECK(row.min_ux == e.min);
    CHECK(row.max_ux == e.max);
    CHECK(row.sup_u == u.sup_norm());
    CHECK(row.H2 == conserved_mu_ch(u).H2);
    CHECK(row.Ht2 == conserved_mu_dp(u).Ht2);
    CHECK(row.V == lyapunov_V(u));
    CHECK(row.resolvedness > 0.999);
}

TEST_CASE("relative drift")
{
    CHECK(relative_drift(1.1, 1.0) == doctest::Approx(0.1));
    CHECK(relative_drift(0.5, 0.1) == doctest::Approx(0.4));
    CHECK(relative_drift(-4.0, -2.0) == doctest::Approx(1.0));
}
