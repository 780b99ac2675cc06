#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "vvb/field.hpp"
#include "vvb/harmonic.hpp"

namespace vvb {

/// (integrability p, summability r, regularity s) of a homogeneous Besov
/// norm. p or r equal to infinity select the sup modification.
struct BesovIndex {
    double p = 2.0;
    double r = 2.0;
    double s = -1.0;

    void validate() const {
        if (p < 1.0 || r < 1.0) throw std::invalid_argument("BesovIndex: p, r must be >= 1");
    }
    void validate_heat() const {
        validate();
        if (!(s < 0.0))
            throw std::invalid_argument("BesovIndex: heat characterization requires s < 0");
    }
};

/// Critical regularity d/p - 1 (scale-invariant index of the system).
inline double critical_regularity(int d, double p) { return d / p - 1.0; }

namespace detail {

// C-infinity step: 0 at x <= 0, 1 at x >= 1.
inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

// Radial plateau: 1 on [0, 3/4], 0 on [4/3, inf).
inline double plateau(double rho) { return smooth_step((4.0 / 3.0 - rho) / (4.0 / 3.0 - 3.0 / 4.0)); }

}  // namespace detail

/// Truncated Littlewood-Paley ladder on the grid's wavenumber lattice.
/// Interior blocks carry the standard annulus bump phi(xi/2^j) =
/// plateau(|xi|/2^{j+1}) - plateau(|xi|/2^j); the extreme blocks absorb
/// everything below/above so the ladder telescopes to 1 on every lattice
/// frequency except xi = 0.
struct DyadicLadder {
    Grid grid;
    int j_min = 0;
    int j_max = 0;
    bool absorbs_low = false;   // lattice frequencies below the lowest annulus
    bool absorbs_high = false;  // lattice frequencies above the highest annulus

    explicit DyadicLadder(const Grid& g) : grid(g) {
        j_min = static_cast<int>(std::ceil(std::log2(2.0 * M_PI / g.length)));
        j_max = static_cast<int>(std::floor(std::log2(M_PI * g.n / (3.0 * g.length)) + 1.0));
        if (j_max <= j_min) throw std::invalid_argument("DyadicLadder: grid too coarse for a dyadic range");
        const double k_lo = g.k_unit();
        const double k_hi = g.k_unit() * (g.n / 2.0) * std::sqrt(static_cast<double>(g.dim));
        absorbs_low = k_lo < 0.75 * std::ldexp(1.0, j_min);
        absorbs_high = k_hi > (8.0 / 3.0) * std::ldexp(1.0, j_max);
    }

    int blocks() const { return j_max - j_min + 1; }

    /// Block multiplier at physical frequency |xi|.
    double bump(int j, double kabs) const {
        if (j < j_min || j > j_max) throw std::invalid_argument("DyadicLadder: block index out of range");
        const double hi = detail::plateau(kabs / std::ldexp(1.0, j + 1));
        if (j == j_max) return 1.0 - detail::plateau(kabs / std::ldexp(1.0, j));
        if (j == j_min) return hi;
        return hi - detail::plateau(kabs / std::ldexp(1.0, j));
    }
};

/// Littlewood-Paley block: multiplier phi(k/2^j); zero mode always excluded.
inline SpectralField dyadic_block(const SpectralField& f, const DyadicLadder& ladder, int j) {
    SpectralField out = apply_multiplier(
        f,
        [&ladder, j](const std::array<int, 3>&, double ksq) {
            return std::complex<double>(ladder.bump(j, std::sqrt(ksq)), 0.0);
        },
        false);
    for (int c = 0; c < out.components; ++c) out.at(c, 0) = 0.0;
    return out;
}

/// Dyadic-block Besov norm ( sum_j (2^{js} ||block_j f||_{L^p})^r )^{1/r},
/// sup over j for r = infinity.
inline double besov_norm_dyadic(const SpectralField& f, const BesovIndex& idx, const DyadicLadder& ladder) {
    idx.validate();
    const bool sup_mod = std::isinf(idx.r);
    double acc = 0.0;
    for (int j = ladder.j_min; j <= ladder.j_max; ++j) {
        const double bn = lp_norm(dyadic_block(f, ladder, j), idx.p);
        const double term = std::pow(2.0, idx.s * j) * bn;
        if (sup_mod)
            acc = std::max(acc, term);
        else
            acc += std::pow(term, idx.r);
    }
    return sup_mod ? acc : std::pow(acc, 1.0 / idx.r);
}

inline double besov_norm_dyadic(const SpectralField& f, const BesovIndex& idx) {
    return besov_norm_dyadic(f, idx, DyadicLadder(f.grid));
}

struct HeatQuadrature {
    double t_lo = 0.0;
    double t_hi = 0.0;
    int points_per_decade = 24;  // >= 16 per the characterization contract
};

inline HeatQuadrature default_heat_quadrature(const DyadicLadder& ladder) {
    HeatQuadrature q;
    q.t_lo = 0.5 * std::ldexp(1.0, -2 * ladder.j_max);
    q.t_hi = 8.0 * std::ldexp(1.0, -2 * ladder.j_min);
    return q;
}

/// Heat-flow Besov norm: L^r(dt/t) quadrature of t^{-s/2}||e^{tL}f||_{L^p}
/// on a geometric time grid. Requires s < 0.
inline double besov_norm_heat(const SpectralField& f, const BesovIndex& idx, const HeatQuadrature& quad) {
    idx.validate_heat();
    const int decades = static_cast<int>(std::ceil(std::log10(quad.t_hi / quad.t_lo)));
    const int nodes = std::max(2, decades * quad.points_per_decade + 1);
    const double dlog = std::log(quad.t_hi / quad.t_lo) / (nodes - 1);
    const bool sup_mod = std::isinf(idx.r);

    double acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double t = quad.t_lo * std::exp(i * dlog);
        const double g = std::pow(t, -idx.s / 2.0) * lp_norm(heat_propagate(f, t), idx.p);
        if (sup_mod) {
            acc = std::max(acc, g);
        } else {
            const double w = (i == 0 || i == nodes - 1) ? 0.5 : 1.0;  // trapezoid in log t
            acc += w * std::pow(g, idx.r) * dlog;
        }
    }
    return sup_mod ? acc : std::pow(acc, 1.0 / idx.r);
}

inline double besov_norm_heat(const SpectralField& f, const BesovIndex& idx) {
    return besov_norm_heat(f, idx, default_heat_quadrature(DyadicLadder(f.grid)));
}

/// ||f||_{B^{s - d(1/p1 - 1/p2)}_{p2, r2}} / ||f||_{B^s_{p1, r1}} with
/// dyadic norms; the embedding direction requires p1 <= p2 and r1 <= r2.
inline double embedding_ratio(const SpectralField& f, double p1, double r1, double p2, double r2, double s) {
    if (p1 > p2 || r1 > r2) throw std::invalid_argument("embedding_ratio: need p1 <= p2 and r1 <= r2");
    const DyadicLadder ladder(f.grid);
    const int d = f.grid.dim;
    const BesovIndex src{p1, r1, s};
    const BesovIndex dst{p2, r2, s - d * (1.0 / p1 - 1.0 / p2)};
    const double denom = besov_norm_dyadic(f, src, ladder);
    if (denom == 0.0) return 0.0;
    return besov_norm_dyadic(f, dst, ladder) / denom;
}

}  // namespace vvb
