#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "vvb/field.hpp"
#include "vvb/harmonic.hpp"
#include "vvb/random.hpp"

using namespace vvb;

namespace {
double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.coeff.size(); ++i) m = std::max(m, std::abs(a.coeff[i] - b.coeff[i]));
    return m;
}
}  // namespace

TEST_CASE("heat_propagate: single mode, identity, semigroup") {
    const Grid g = make_grid(2, 32, 2.0 * M_PI);
    const SpectralField s = single_mode_sin(g, {1, 0, 0});

    const SpectralField h1 = heat_propagate(s, 1.0);
    CHECK(max_coeff_diff(h1, std::exp(-1.0) * s) < 1e-14);
    CHECK(std::exp(-1.0) == doctest::Approx(0.3678794).epsilon(1e-6));

    const SpectralField f = random_band_limited(g, 1, 5, 7);
    CHECK(max_coeff_diff(heat_propagate(f, 0.0), f) < 1e-15);

    const SpectralField two_step = heat_propagate(heat_propagate(f, 0.3), 0.7);
    CHECK(max_coeff_diff(two_step, heat_propagate(f, 1.0)) < 1e-12);

    CHECK_THROWS_AS(heat_propagate(f, -0.1), std::invalid_argument);
}

TEST_CASE("heat_propagate is an L^p contraction on the torus") {
    const Grid g = make_grid(2, 32, 2.0 * M_PI);
    const SpectralField f = random_band_limited(g, 1, 6, 23);
    for (double t : {0.01, 0.1, 1.0, 5.0}) {
        const SpectralField ht = heat_propagate(f, t);
        CHECK(lp_norm(ht, 2.0) <= lp_norm(f, 2.0) + 1e-10);
        const double inf = std::numeric_limits<double>::infinity();
        CHECK(lp_norm(ht, inf) <= lp_norm(f, inf) + 1e-10);
    }
}

TEST_CASE("kernel norms match the Gaussian-integral oracle") {
    // unit mass for q = 1, any t and d
    for (int d : {2, 3})
        for (double t : {0.1, 1.0, 7.0}) CHECK(heat_kernel_norm(t, 1.0, d) == doctest::Approx(1.0).epsilon(1e-13));

    // frozen from the radial quadrature oracle: (t=1, q=2, d=2) -> (8 pi)^{-1/2}
    CHECK(heat_kernel_norm(1.0, 2.0, 2) == doctest::Approx(0.19947114).epsilon(1e-6));
    CHECK(heat_kernel_norm(1.0, 2.0, 2) ==
          doctest::Approx(oracles::heat_kernel_norm_quadrature(2.0, 2)).epsilon(1e-8));

    for (int d : {2, 3})
        for (double q : {1.0, 1.5, 2.0, 3.0}) {
            CHECK(heat_kernel_norm(1.0, q, d) ==
                  doctest::Approx(oracles::heat_kernel_norm_quadrature(q, d)).epsilon(1e-7));
            CHECK(grad_heat_kernel_norm(1.0, q, d) ==
                  doctest::Approx(oracles::grad_heat_kernel_norm_quadrature(q, d)).epsilon(1e-7));
        }

    CHECK_THROWS_AS(heat_kernel_norm(0.0, 2.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(grad_heat_kernel_norm(-1.0, 2.0, 2), std::invalid_argument);
}

TEST_CASE("kernel norm scaling laws are exact") {
    for (int d : {2, 3})
        for (double q : {1.0, 2.0, 2.5}) {
            const double qp = 1.0 - 1.0 / q;  // 1/q'
            const double ratio = heat_kernel_norm(2.0, q, d) / heat_kernel_norm(1.0, q, d);
            CHECK(ratio == doctest::Approx(std::pow(2.0, -d * 0.5 * qp)).epsilon(1e-14));
            const double gratio = grad_heat_kernel_norm(2.0, q, d) / grad_heat_kernel_norm(1.0, q, d);
            CHECK(gratio == doctest::Approx(std::pow(2.0, -d * 0.5 * qp - 0.5)).epsilon(1e-14));
        }
}

TEST_CASE("riesz transform: single modes, zero mode, sum of squares") {
    const Grid g = make_grid(2, 32, 2.0 * M_PI);
    const SpectralField s = single_mode_sin(g, {1, 0, 0});

    // R_1 sin(x1) = -cos(x1)
    CHECK(max_coeff_diff(riesz_transform(s, 0), single_mode_cos(g, {1, 0, 0}, -1.0)) < 1e-13);

    PhysicalField onep(g, 1);
    for (auto& v : onep.values) v = 1.0;
    CHECK(lp_norm(riesz_transform(to_spectral(onep), 0), 2.0) < 1e-14);

    // sum_j R_j R_j f = -f on mean-zero fields
    SpectralField f = random_band_limited(g, 1, 6, 5);
    SpectralField acc(g, 1);
    for (int j = 0; j < g.dim; ++j) acc += riesz_transform(riesz_transform(f, j), j);
    CHECK(max_coeff_diff(acc, -1.0 * f) < 1e-12);

    // isometry: sum_j ||R_j f||_2^2 = ||f||_2^2
    double sq = 0.0;
    for (int j = 0; j < g.dim; ++j) {
        const double nj = lp_norm(riesz_transform(f, j), 2.0);
        sq += nj * nj;
    }
    const double n = lp_norm(f, 2.0);
    CHECK(sq == doctest::Approx(n * n).epsilon(1e-12));
}

TEST_CASE("riesz potential on single modes") {
    const Grid g = make_grid(2, 32, 2.0 * M_PI);
    CHECK(max_coeff_diff(riesz_potential(single_mode_sin(g, {1, 0, 0})), single_mode_sin(g, {1, 0, 0})) < 1e-13);
    CHECK(max_coeff_diff(riesz_potential(single_mode_sin(g, {2, 0, 0})), single_mode_sin(g, {2, 0, 0}, 0.5)) <
          1e-13);

    // zero-mode drop is logged
    const long before = riesz_potential_zero_drops();
    PhysicalField onep(g, 1);
    for (auto& v : onep.values) v = 1.0;
    riesz_potential(to_spectral(onep));
    CHECK(riesz_potential_zero_drops() == before + 1);
}

TEST_CASE("riesz potential HLS probe: empirical constant over an ensemble") {
    // ||(sqrt(-Lap))^{-1} f||_{L^{dp/(d-p)}} <= C ||f||_{L^p}, d=2, p=3/2
    const Grid g = make_grid(2, 64, 2.0 * M_PI);
    const double p = 1.5, pstar = 2.0 * p / (2.0 - p);
    double cmax = 0.0;
    for (int m = 0; m < 16; ++m) {
        SpectralField f = random_band_limited(g, 1, 8, 100 + m);
        const double ratio = lp_norm(riesz_potential(f), pstar) / lp_norm(f, p);
        CHECK(std::isfinite(ratio));
        cmax = std::max(cmax, ratio);
    }
    MESSAGE("empirical HLS constant (d=2, p=3/2): ", cmax);
    CHECK(cmax < 50.0);
}

TEST_CASE("leray projection: annihilation, fixed points, idempotence") {
    const Grid g = make_grid(2, 32, 2.0 * M_PI);

    const SpectralField grad_phi = gradient(single_mode_cos(g, {1, 0, 0}));
    CHECK(lp_norm(leray_project(grad_phi), 2.0) < 1e-13);

    SpectralField u(g, 2);
    u.set_component(0, single_mode_sin(g, {0, 1, 0}));
    CHECK(max_coeff_diff(leray_project(u), u) < 1e-13);

    const SpectralField r = random_band_limited(g, 2, 6, 77);
    const SpectralField pr = leray_project(r);
    CHECK(max_coeff_diff(leray_project(pr), pr) < 1e-12);
    CHECK(lp_norm(divergence(pr), 2.0) <= 1e-10 * lp_norm(pr, 2.0));

    CHECK_THROWS_AS(leray_project(single_mode_sin(g, {1, 0, 0})), std::invalid_argument);
}
