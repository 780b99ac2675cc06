#pragma once

// Initial-data preparation: dyadic truncation theta_n = chi_n sum_{|j|<=n}
// block_j(theta), u_n = sum_{|j|<=n} block_j(u) followed by Leray projection.

#include <cmath>
#include <stdexcept>

#include "vvb/besov.hpp"
#include "vvb/field.hpp"
#include "vvb/harmonic.hpp"
#include "vvb/random.hpp"

namespace vvb {

struct InitialData {
    PhysicalField theta0;      // prepared temperature, physical samples
    SpectralField theta0_hat;  // its spectral image
    SpectralField u0;          // prepared velocity, divergence-free, mean-zero
    int trunc_level = 0;
    double cutoff_radius = 0.0;
    double theta_sup = 0.0;      // ||theta0||_inf after preparation
    double theta_raw_sup = 0.0;  // ||theta_raw||_inf, for the overshoot record
    double uh_besov = 0.0;       // ||u0^h||_{B^{d/p-1}_{p,r}} dyadic
    double ud_besov = 0.0;
    double besov_p = 0.0, besov_r = 0.0;

    double gibbs_overshoot() const { return theta_raw_sup > 0.0 ? theta_sup / theta_raw_sup : 1.0; }
};

namespace detail {

/// Multiplier of the partial dyadic sum sum_{|j| <= n}: by telescoping it is
/// plateau(|xi|/2^{n+1}) - plateau(2^n |xi|); the zero mode drops out.
inline double partial_sum_bump(int n, double kabs) {
    if (kabs == 0.0) return 0.0;
    return plateau(kabs / std::ldexp(1.0, n + 1)) - plateau(kabs * std::ldexp(1.0, n));
}

inline SpectralField dyadic_partial_sum(const SpectralField& f, int n) {
    return apply_multiplier(
        f,
        [n](const std::array<int, 3>&, double ksq) {
            return std::complex<double>(partial_sum_bump(n, std::sqrt(ksq)), 0.0);
        },
        false);
}

/// Smooth radial cutoff supported in the ball of the given radius around the
/// box center (periodic distance).
inline PhysicalField cutoff_samples(const Grid& g, double radius) {
    PhysicalField chi(g, 1);
    const double width = std::max(0.25, 0.2 * radius);
    for (std::size_t i = 0; i < g.points(); ++i) {
        const auto ix = g.unflatten(i);
        double rsq = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            double dx = std::abs(g.coord(ix[a]) - 0.5 * g.length);
            dx = std::min(dx, g.length - dx);
            rsq += dx * dx;
        }
        chi.at(0, i) = smooth_step((radius - std::sqrt(rsq)) / width);
    }
    return chi;
}

}  // namespace detail

/// chi_n * partial dyadic sum for the temperature, partial dyadic sum +
/// Leray projection + mean removal for the velocity. Records sup norms and
/// the Besov norms of the velocity components at s = d/p - 1.
inline InitialData prepare_data(const PhysicalField& theta_raw, const SpectralField& u_raw, int n, double p,
                                double r) {
    if (theta_raw.components != 1) throw std::invalid_argument("prepare_data: scalar temperature expected");
    if (u_raw.components != u_raw.grid.dim) throw std::invalid_argument("prepare_data: d-component velocity expected");
    const DyadicLadder ladder(u_raw.grid);
    if (n > ladder.j_max)
        throw std::invalid_argument("prepare_data: truncation level exceeds the grid's dyadic ladder (j_max = " +
                                    std::to_string(ladder.j_max) + ")");

    InitialData data;
    data.trunc_level = n;
    data.besov_p = p;
    data.besov_r = r;

    const Grid& g = theta_raw.grid;
    data.theta_raw_sup = lp_norm(theta_raw, std::numeric_limits<double>::infinity());

    // temperature: spectral truncation, then the physical-space cutoff
    const SpectralField theta_trunc = detail::dyadic_partial_sum(to_spectral(theta_raw), n);
    data.cutoff_radius = std::min(static_cast<double>(n < 1 ? 1 : n), 0.45 * g.length);
    const PhysicalField chi = detail::cutoff_samples(g, data.cutoff_radius);
    PhysicalField theta_phys = to_physical(theta_trunc);
    for (std::size_t i = 0; i < g.points(); ++i) theta_phys.at(0, i) *= chi.at(0, i);
    data.theta0 = theta_phys;
    data.theta0_hat = to_spectral(theta_phys);
    data.theta_sup = lp_norm(data.theta0, std::numeric_limits<double>::infinity());

    // velocity: truncation, projection, mean removal
    SpectralField u = detail::dyadic_partial_sum(u_raw, n);
    u = leray_project(u);
    zero_mean(u);
    data.u0 = u;

    const int d = g.dim;
    const BesovIndex idx{p, r, critical_regularity(d, p)};
    SpectralField uh(g, d - 1);
    for (int c = 0; c < d - 1; ++c) uh.set_component(c, u.component(c));
    data.uh_besov = besov_norm_dyadic(uh, idx, ladder);
    data.ud_besov = besov_norm_dyadic(u.component(d - 1), idx, ladder);
    return data;
}

// ---------------------------------------------------------------------------
// named data generators
// ---------------------------------------------------------------------------

/// Two-interface square wave sign(sin(2 pi x1 / L)) * amplitude; the
/// discontinuous-temperature test case.
inline PhysicalField interface_temperature(const Grid& g, double amplitude = 1.0) {
    return sample_scalar(g, [&](double x, double, double) {
        const double s = std::sin(2.0 * M_PI * x / g.length);
        return amplitude * (s >= 0.0 ? 1.0 : -1.0);
    });
}

/// Smooth blob temperature, fully resolved.
inline PhysicalField blob_temperature(const Grid& g, double amplitude = 1.0) {
    const double ku = 2.0 * M_PI / g.length;
    return sample_scalar(g, [&](double x, double y, double z) {
        return amplitude * std::sin(ku * x) * std::cos(ku * y) * (g.dim == 3 ? std::cos(ku * z) : 1.0);
    });
}

/// Shear-dominated velocity: the vertical component is an O(vertical_amp)
/// random profile of the horizontal coordinates alone (divergence-free by
/// construction), plus an O(horizontal_amp) generic divergence-free
/// perturbation. This is the "large vertical, small horizontal" data family.
inline SpectralField shear_velocity(const Grid& g, double vertical_amp, double horizontal_amp,
                                    std::uint64_t seed) {
    const int d = g.dim;
    SpectralField prof = random_band_limited(g, 1, 4, seed);
    for (std::size_t i = 0; i < g.points(); ++i) {
        const auto m = g.modes(i);
        if (m[d - 1] != 0) prof.at(0, i) = 0.0;
    }
    const double pn = l2_norm_spectral(prof);
    if (pn > 0.0) prof *= vertical_amp / pn;

    SpectralField u(g, d);
    u.set_component(d - 1, prof);
    if (horizontal_amp > 0.0) {
        SpectralField w = random_divergence_free(g, 4, seed + 7);
        u += horizontal_amp * w;
    }
    u = leray_project(u);
    zero_mean(u);
    return u;
}

}  // namespace vvb
