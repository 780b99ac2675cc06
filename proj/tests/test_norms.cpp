#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "vvb/besov.hpp"
#include "vvb/monitor.hpp"
#include "vvb/random.hpp"

using namespace vvb;

TEST_CASE("spacetime_norm: decaying single mode against the scalar oracle") {
    const Grid g = make_grid(2, 32, 2.0 * M_PI);
    const SpectralField s = single_mode_sin(g, {1, 0, 0});
    const double T = 40.0;
    const Timeline f = sample_timeline(graded_times(T, 320), [&](double t) { return std::exp(-t) * s; });

    // || e^{-t} sin ||_{L^2_t L^2_x} = ||sin||_2 sqrt((1 - e^{-2T})/2) ~ pi
    const double got = spacetime_norm(f, SpaceTimeNormSpec{2.0, 2.0, 0.0});
    const double expect = std::sqrt(2.0 * M_PI * M_PI) * std::sqrt((1.0 - std::exp(-2.0 * T)) / 2.0);
    CHECK(expect == doctest::Approx(3.1416).epsilon(1e-4));
    CHECK(got == doctest::Approx(expect).epsilon(0.002));

    // zero path
    const Timeline z = constant_timeline(graded_times(1.0, 8), zero_field(g, 1));
    CHECK(spacetime_norm(z, SpaceTimeNormSpec{2.0, 2.0, 0.0}) == 0.0);
}

TEST_CASE("spacetime_norm: weighted constant path closed form") {
    const Grid g = make_grid(2, 32, 2.0 * M_PI);
    const SpectralField s = single_mode_sin(g, {1, 0, 0});
    const double T = 2.0, a = 0.2, rho = 4.0;
    const Timeline f = constant_timeline(graded_times(T, 256), s);

    const double got = spacetime_norm(f, SpaceTimeNormSpec{rho, 2.0, a});
    const double expect = lp_norm(s, 2.0) * std::pow(std::pow(T, a * rho + 1.0) / (a * rho + 1.0), 1.0 / rho);
    CHECK(got == doctest::Approx(expect).epsilon(0.005));

    // invalid weight: a rho' >= 1
    CHECK_THROWS_AS(spacetime_norm(f, SpaceTimeNormSpec{1.5, 2.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(spacetime_norm(f, SpaceTimeNormSpec{2.0, 2.0, -0.1}), std::invalid_argument);
}

TEST_CASE("spacetime_norm: homogeneity and monotonicity in T") {
    const Grid g = make_grid(2, 16, 2.0 * M_PI);
    const SpectralField base = random_band_limited(g, 1, 4, 12);
    const Timeline f =
        sample_timeline(graded_times(2.0, 32), [&](double t) { return std::cos(t) * base; });
    const SpaceTimeNormSpec spec{4.0, 3.0, 0.1};

    Timeline f3 = f;
    for (auto& s : f3.snapshots) s *= 3.0;
    CHECK(spacetime_norm(f3, spec) == doctest::Approx(3.0 * spacetime_norm(f, spec)).epsilon(1e-12));

    Timeline longer = sample_timeline(graded_times(3.0, 48), [&](double t) { return std::cos(t) * base; });
    CHECK(spacetime_norm(longer, spec) >= spacetime_norm(f, spec));
}

TEST_CASE("heat-flow path reproduces the heat Besov norm at s = -2/r") {
    const Grid g = make_grid(2, 64, 2.0 * M_PI);
    const SpectralField u0 = random_band_limited(g, 1, 6, 99);
    const double r = 2.0, p = 3.0;

    const DyadicLadder ladder(g);
    const HeatQuadrature quad = default_heat_quadrature(ladder);
    const Timeline path =
        sample_timeline(graded_times(quad.t_hi, 256), [&](double t) { return heat_propagate(u0, t); });
    const double st = spacetime_norm(path, SpaceTimeNormSpec{r, p, 0.0});
    const double bh = besov_norm_heat(u0, BesovIndex{p, r, -2.0 / r}, quad);
    MESSAGE("spacetime / besov_heat = ", st / bh);
    CHECK(st / bh == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("delta_u: coincidence, lambda monotonicity, undamped reduction") {
    const Grid g = make_grid(2, 16, 2.0 * M_PI);
    const SolverExponents ex = make_solver_exponents(2, 1.2, 2.0, Regime::theorem1);
    const int M = 16;

    const SpectralField a = random_divergence_free(g, 4, 5);
    const SpectralField b = random_divergence_free(g, 4, 6);
    const Timeline ua = sample_timeline(graded_times(1.0, M), [&](double t) { return heat_propagate(a, t); });
    const Timeline ub = sample_timeline(graded_times(1.0, M), [&](double t) { return heat_propagate(b, t); });

    CHECK(delta_u(ua, ua, 1.0, ex) == 0.0);

    const double d0 = delta_u(ua, ub, 0.0, ex);
    const double d1 = delta_u(ua, ub, 1.0, ex);
    const double d4 = delta_u(ua, ub, 4.0, ex);
    CHECK(d0 >= d1);
    CHECK(d1 >= d4);
    CHECK(d0 > 0.0);

    // lambda = 0 equals the plain (undamped) difference norms
    const Timeline du = timeline_difference(ub, ua);
    const Timeline gdu = timeline_gradient(du);
    const double manual = spacetime_norm(du, SpaceTimeNormSpec{4.0, ex.fam1.q_u, 0.0}) +
                          spacetime_norm(gdu, SpaceTimeNormSpec{4.0, ex.fam1.q_gu, 0.0}) +
                          spacetime_norm(du, SpaceTimeNormSpec{4.0, ex.q_eps_u(), 0.0}) +
                          spacetime_norm(gdu, SpaceTimeNormSpec{4.0, ex.q_eps_gu(), 0.0});
    CHECK(d0 == doctest::Approx(manual).epsilon(1e-12));

    // theorem2 variant runs and is monotone in lambda too
    const SolverExponents ex2 = make_solver_exponents(2, 1.6, 16.0, Regime::theorem2);
    CHECK(delta_u(ua, ub, 0.0, ex2) >= delta_u(ua, ub, 2.0, ex2));
}

TEST_CASE("theorem_report: zero solution gives zero constants") {
    const Grid g = make_grid(2, 16, 2.0 * M_PI);
    const SolverExponents ex = make_solver_exponents(2, 1.2, 2.0, Regime::theorem1);
    const Timeline zu = constant_timeline(graded_times(1.0, 8), zero_field(g, 2));
    const Timeline zp = constant_timeline(graded_times(1.0, 8), zero_field(g, 1));

    const auto reports = theorem_report(zu, zp, 0.0, 0.0, 0.0, 0.0, ex);
    REQUIRE(reports.size() == 4);
    for (const auto& rep : reports) {
        CHECK(rep.lhs == 0.0);
        CHECK(rep.inferred_c == 0.0);
    }
}

TEST_CASE("theorem_report: every ingredient is listed and sums to the lhs") {
    const Grid g = make_grid(2, 32, 2.0 * M_PI);
    const SolverExponents ex = make_solver_exponents(2, 1.2, 2.0, Regime::theorem1);
    const SpectralField u0 = random_divergence_free(g, 4, 31);
    const Timeline u = sample_timeline(graded_times(1.0, 16), [&](double t) { return heat_propagate(u0, t); });
    const Timeline pi = sample_timeline(graded_times(1.0, 16), [&](double t) {
        return std::exp(-t) * single_mode_cos(g, {1, 0, 0});
    });

    const auto reports = theorem_report(u, pi, 1.0, 1.0, 0.02, 0.5, ex);
    for (const auto& rep : reports) {
        if (rep.name == "maximum_principle") continue;
        double s = 0.0;
        for (const auto& kv : rep.ingredients) s += kv.second;
        CHECK(rep.lhs == doctest::Approx(s).epsilon(1e-12));
        CHECK(rep.inferred_c > 0.0);
    }

    // horizontal and pressure constants are inferred against eta
    CHECK(reports[0].rhs_shape == "C1 * eta");
    CHECK(reports[0].inferred_c == doctest::Approx(reports[0].lhs / 0.02).epsilon(1e-12));
    CHECK(reports[2].rhs_shape == "C4 * eta");
}
