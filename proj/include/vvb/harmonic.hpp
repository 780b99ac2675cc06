#pragma once

#include <cmath>
#include <stdexcept>

#include "vvb/field.hpp"

namespace vvb {

// ---------------------------------------------------------------------------
// heat semigroup
// ---------------------------------------------------------------------------

/// e^{t Laplacian}: multiplier exp(-|k|^2 t). t = 0 is the identity.
inline SpectralField heat_propagate(const SpectralField& f, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_propagate: t must be >= 0");
    if (t == 0.0) return f;
    return apply_multiplier(
        f, [t](const std::array<int, 3>&, double ksq) { return std::complex<double>(std::exp(-ksq * t), 0.0); },
        false);
}

// ---------------------------------------------------------------------------
// closed-form kernel norms, K(t,x) = (4 pi t)^{-d/2} exp(-|x|^2/(4t))
// ---------------------------------------------------------------------------

/// ||K(1,.)||_{L^q} as a closed-form Gaussian integral.
inline double heat_kernel_base_norm(double q, int d) {
    // ||K(1)||_q^q = (4pi)^{-qd/2} (4pi/q)^{d/2}
    const double log_q_norm = -q * d * 0.5 * std::log(4.0 * M_PI) + d * 0.5 * std::log(4.0 * M_PI / q);
    return std::exp(log_q_norm / q);
}

/// ||grad K(1,.)||_{L^q}; grad K(1,x) = -x/2 K(1,x).
inline double grad_heat_kernel_base_norm(double q, int d) {
    // ||Omega(1)||_q^q = 2^{-q} (4pi)^{-qd/2} * S_{d-1} * Gamma((q+d)/2)/2 * (q/4)^{-(q+d)/2}
    // with S_{d-1} = 2 pi^{d/2} / Gamma(d/2).
    const double log_radial = std::lgamma((q + d) * 0.5) - ((q + d) * 0.5) * std::log(q / 4.0);
    const double log_sphere = std::log(2.0) + d * 0.5 * std::log(M_PI) - std::lgamma(d * 0.5);
    const double log_qq = -q * std::log(2.0) - q * d * 0.5 * std::log(4.0 * M_PI) + log_sphere + log_radial -
                          std::log(2.0);
    return std::exp(log_qq / q);
}

/// ||K(t,.)||_{L^q} = ||K(1,.)||_{L^q} / t^{d/(2q')}.
inline double heat_kernel_norm(double t, double q, int d) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_kernel_norm: t must be positive");
    if (q < 1.0) throw std::invalid_argument("heat_kernel_norm: q must be >= 1");
    const double inv_qprime = 1.0 - 1.0 / q;
    return heat_kernel_base_norm(q, d) * std::pow(t, -d * 0.5 * inv_qprime);
}

/// ||grad K(t,.)||_{L^q} = ||grad K(1,.)||_{L^q} / t^{d/(2q') + 1/2}.
inline double grad_heat_kernel_norm(double t, double q, int d) {
    if (!(t > 0.0)) throw std::invalid_argument("grad_heat_kernel_norm: t must be positive");
    if (q < 1.0) throw std::invalid_argument("grad_heat_kernel_norm: q must be >= 1");
    const double inv_qprime = 1.0 - 1.0 / q;
    return grad_heat_kernel_base_norm(q, d) * std::pow(t, -d * 0.5 * inv_qprime - 0.5);
}

// ---------------------------------------------------------------------------
// Riesz operators
// ---------------------------------------------------------------------------

/// R_j: multiplier -i k_j / |k|; zero wavevector maps to 0.
inline SpectralField riesz_transform(const SpectralField& f, int j) {
    if (j < 0 || j >= f.grid.dim) throw std::invalid_argument("riesz_transform: axis out of range");
    const double ku = f.grid.k_unit();
    return apply_multiplier(
        f,
        [j, ku](const std::array<int, 3>& m, double ksq) {
            if (ksq == 0.0) return std::complex<double>(0.0, 0.0);
            return std::complex<double>(0.0, -ku * m[j] / std::sqrt(ksq));
        },
        true);
}

/// Count of zero-mode drops performed by riesz_potential; diagnostic only.
inline long& riesz_potential_zero_drops() {
    static long drops = 0;
    return drops;
}

/// (sqrt(-Laplacian))^{-1}: multiplier 1/|k|, zero mode dropped (and counted).
inline SpectralField riesz_potential(const SpectralField& f) {
    double zero_energy = 0.0;
    for (int c = 0; c < f.components; ++c) zero_energy += std::norm(f.at(c, 0));
    if (zero_energy > 0.0) ++riesz_potential_zero_drops();
    return apply_multiplier(
        f,
        [](const std::array<int, 3>&, double ksq) {
            if (ksq == 0.0) return std::complex<double>(0.0, 0.0);
            return std::complex<double>(1.0 / std::sqrt(ksq), 0.0);
        },
        false);
}

// ---------------------------------------------------------------------------
// Leray projection
// ---------------------------------------------------------------------------

/// P = I - k k^T / |k|^2 per wavevector; zero mode passes through.
inline SpectralField leray_project(const SpectralField& u) {
    const int d = u.grid.dim;
    if (u.components != d) throw std::invalid_argument("leray_project: need d components");
    SpectralField out = u;
    const std::size_t pts = u.grid.points();
    const double ku = u.grid.k_unit();
    for (std::size_t i = 1; i < pts; ++i) {
        const auto m = u.grid.modes(i);
        double k[3] = {ku * m[0], ku * m[1], ku * m[2]};
        double ksq = 0.0;
        for (int a = 0; a < d; ++a) ksq += k[a] * k[a];
        if (ksq == 0.0) continue;
        std::complex<double> kdotu(0.0, 0.0);
        for (int a = 0; a < d; ++a) kdotu += k[a] * u.at(a, i);
        for (int a = 0; a < d; ++a) out.at(a, i) = u.at(a, i) - k[a] * kdotu / ksq;
    }
    return out;
}

}  // namespace vvb
