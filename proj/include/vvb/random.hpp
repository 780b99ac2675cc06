#pragma once

#include <cmath>
#include <cstdint>

#include "vvb/field.hpp"
#include "vvb/harmonic.hpp"

namespace vvb {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t h) {
    return (static_cast<double>(h >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

/// Standard normal keyed by an integer tuple; the same key gives the same
/// draw on any grid size, so ensembles survive refinement.
inline double keyed_normal(std::uint64_t seed, int m0, int m1, int m2, int tag) {
    std::uint64_t h = seed;
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(m0) + 0x10000));
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(m1) + 0x20000));
    h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(m2) + 0x30000));
    h = splitmix64(h ^ static_cast<std::uint64_t>(tag));
    const double u1 = uniform01(h);
    const double u2 = uniform01(splitmix64(h));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace detail

/// Mean-zero random band-limited scalar/vector field: independent Gaussian
/// coefficients on integer modes with 1 <= |m| <= band, spectrum ~ |m|^decay,
/// conjugate-symmetrized and normalized to unit L^2 norm.
inline SpectralField random_band_limited(const Grid& g, int components, int band, std::uint64_t seed,
                                         double decay = -1.0) {
    SpectralField f(g, components);
    const std::size_t pts = g.points();
    for (std::size_t i = 1; i < pts; ++i) {
        if (g.is_nyquist(i)) continue;
        const auto m = g.modes(i);
        double msq = 0.0;
        for (int a = 0; a < g.dim; ++a) msq += static_cast<double>(m[a]) * m[a];
        const double mabs = std::sqrt(msq);
        if (mabs < 0.5 || mabs > band) continue;
        const double amp = std::pow(mabs, decay);
        for (int c = 0; c < components; ++c) {
            const double re = detail::keyed_normal(seed, m[0], m[1], m[2], 2 * c);
            const double im = detail::keyed_normal(seed, m[0], m[1], m[2], 2 * c + 1);
            f.at(c, i) = amp * std::complex<double>(re, im);
        }
    }
    enforce_conjugate_symmetry(f);
    zero_mean(f);
    const double n2 = l2_norm_spectral(f);
    if (n2 > 0.0) f *= 1.0 / n2;
    return f;
}

/// Divergence-free variant (Leray-projected, renormalized).
inline SpectralField random_divergence_free(const Grid& g, int band, std::uint64_t seed, double decay = -1.0) {
    SpectralField u = random_band_limited(g, g.dim, band, seed, decay);
    u = leray_project(u);
    const double n2 = l2_norm_spectral(u);
    if (n2 > 0.0) u *= 1.0 / n2;
    return u;
}

}  // namespace vvb
