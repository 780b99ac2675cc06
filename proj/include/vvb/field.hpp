#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "vvb/fft.hpp"
#include "vvb/grid.hpp"

namespace vvb {

struct SpectralField;

/// Real samples on the lattice. Value layout is component-major:
/// values[c * grid.points() + idx].
struct PhysicalField {
    Grid grid;
    int components = 1;
    std::vector<double> values;

    PhysicalField() = default;
    PhysicalField(const Grid& g, int comps)
        : grid(g), components(comps), values(comps * g.points(), 0.0) {}

    double& at(int c, std::size_t idx) { return values[c * grid.points() + idx]; }
    double at(int c, std::size_t idx) const { return values[c * grid.points() + idx]; }
    const double* lane(int c) const { return values.data() + c * grid.points(); }
    double* lane(int c) { return values.data() + c * grid.points(); }
};

/// Truncated Fourier representation. Coefficients are stored as a full
/// complex cube per component with conjugate symmetry (the field is real).
struct SpectralField {
    Grid grid;
    int components = 1;
    std::vector<std::complex<double>> coeff;

    SpectralField() = default;
    SpectralField(const Grid& g, int comps)
        : grid(g), components(comps), coeff(comps * g.points(), {0.0, 0.0}) {}

    std::complex<double>& at(int c, std::size_t idx) { return coeff[c * grid.points() + idx]; }
    std::complex<double> at(int c, std::size_t idx) const { return coeff[c * grid.points() + idx]; }
    std::complex<double>* lane(int c) { return coeff.data() + c * grid.points(); }
    const std::complex<double>* lane(int c) const { return coeff.data() + c * grid.points(); }

    SpectralField& operator+=(const SpectralField& o) {
        for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] -= o.coeff[i];
        return *this;
    }
    SpectralField& operator*=(double s) {
        for (auto& v : coeff) v *= s;
        return *this;
    }
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

    /// Extract one component as a scalar field.
    SpectralField component(int c) const {
        SpectralField out(grid, 1);
        std::copy(lane(c), lane(c) + grid.points(), out.lane(0));
        return out;
    }
    void set_component(int c, const SpectralField& s) {
        std::copy(s.lane(0), s.lane(0) + grid.points(), lane(c));
    }

    bool finite() const {
        for (const auto& v : coeff)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }
};

inline void check_same_grid(const SpectralField& a, const SpectralField& b, const char* where) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

// ---------------------------------------------------------------------------
// transforms
// ---------------------------------------------------------------------------

/// Forward DFT; the zero-wavevector coefficient equals the spatial mean.
inline SpectralField to_spectral(const PhysicalField& f) {
    for (double v : f.values)
        if (!std::isfinite(v)) throw std::invalid_argument("to_spectral: non-finite sample");
    SpectralField out(f.grid, f.components);
    const std::size_t pts = f.grid.points();
    std::vector<std::complex<double>> buf(pts);
    for (int c = 0; c < f.components; ++c) {
        for (std::size_t i = 0; i < pts; ++i) buf[i] = f.at(c, i);
        detail::fft_nd(buf, f.grid.dim, f.grid.n, true);
        std::copy(buf.begin(), buf.end(), out.lane(c));
    }
    return out;
}

inline PhysicalField to_physical(const SpectralField& f) {
    PhysicalField out(f.grid, f.components);
    const std::size_t pts = f.grid.points();
    std::vector<std::complex<double>> buf(pts);
    for (int c = 0; c < f.components; ++c) {
        std::copy(f.lane(c), f.lane(c) + pts, buf.begin());
        detail::fft_nd(buf, f.grid.dim, f.grid.n, false);
        for (std::size_t i = 0; i < pts; ++i) out.at(c, i) = buf[i].real();
    }
    return out;
}

/// Discard the imaginary leakage of a nominally real field: round-trip
/// through physical space. Used after assembling coefficients by hand.
inline void enforce_conjugate_symmetry(SpectralField& f) { f = to_spectral(to_physical(f)); }

// ---------------------------------------------------------------------------
// multipliers and derivatives
// ---------------------------------------------------------------------------

/// Apply a scalar multiplier m(k) to every component. `odd` multipliers
/// (imaginary, sign-odd in k) zero the unpaired Nyquist planes to keep the
/// field real.
inline SpectralField apply_multiplier(const SpectralField& f,
                                      const std::function<std::complex<double>(const std::array<int, 3>&, double)>& m,
                                      bool odd) {
    SpectralField out(f.grid, f.components);
    const std::size_t pts = f.grid.points();
    const double ku = f.grid.k_unit();
    for (std::size_t i = 0; i < pts; ++i) {
        if (odd && f.grid.is_nyquist(i)) continue;
        const auto mv = f.grid.modes(i);
        double ksq = 0.0;
        for (int a = 0; a < f.grid.dim; ++a) ksq += (ku * mv[a]) * (ku * mv[a]);
        const std::complex<double> mult = m(mv, ksq);
        for (int c = 0; c < f.components; ++c) out.at(c, i) = mult * f.at(c, i);
    }
    return out;
}

/// Spectral derivative along one axis, multiplier i*k_axis, Nyquist zeroed.
inline SpectralField derivative(const SpectralField& f, int axis) {
    if (axis < 0 || axis >= f.grid.dim) throw std::invalid_argument("derivative: axis out of range");
    const double ku = f.grid.k_unit();
    return apply_multiplier(
        f, [axis, ku](const std::array<int, 3>& m, double) { return std::complex<double>(0.0, ku * m[axis]); },
        true);
}

/// Divergence of a vector field (d components -> scalar).
inline SpectralField divergence(const SpectralField& u) {
    if (u.components != u.grid.dim) throw std::invalid_argument("divergence: need d components");
    SpectralField out(u.grid, 1);
    for (int a = 0; a < u.grid.dim; ++a) out += derivative(u.component(a), a);
    return out;
}

/// Gradient of a scalar field (scalar -> d components).
inline SpectralField gradient(const SpectralField& f) {
    if (f.components != 1) throw std::invalid_argument("gradient: scalar input expected");
    SpectralField out(f.grid, f.grid.dim);
    for (int a = 0; a < f.grid.dim; ++a) out.set_component(a, derivative(f, a));
    return out;
}

/// Jacobian matrix grad(u)_{ij} = d_i u_j stored row-major (i*d + j).
inline SpectralField jacobian(const SpectralField& u) {
    const int d = u.grid.dim;
    if (u.components != d) throw std::invalid_argument("jacobian: need d components");
    SpectralField out(u.grid, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.set_component(i * d + j, derivative(u.component(j), i));
    return out;
}

// ---------------------------------------------------------------------------
// dealiased products
// ---------------------------------------------------------------------------

/// 2/3-rule mask: keep |m_axis| <= n/3 on every axis.
inline void dealias(SpectralField& f) {
    const int cut = f.grid.n / 3;
    const std::size_t pts = f.grid.points();
    for (std::size_t i = 0; i < pts; ++i) {
        const auto m = f.grid.modes(i);
        bool kill = false;
        for (int a = 0; a < f.grid.dim; ++a)
            if (std::abs(m[a]) > cut) kill = true;
        if (kill)
            for (int c = 0; c < f.components; ++c) f.at(c, i) = 0.0;
    }
}

/// Pointwise physical-space product with 2/3 dealiasing of inputs and output.
/// Component shapes: scalar*scalar, scalar*X (broadcast), or X*X of equal
/// component count (componentwise).
inline SpectralField multiply(const SpectralField& a, const SpectralField& b) {
    check_same_grid(a, b, "multiply");
    const bool broadcast_a = a.components == 1 && b.components > 1;
    const bool broadcast_b = b.components == 1 && a.components > 1;
    if (!broadcast_a && !broadcast_b && a.components != b.components)
        throw std::invalid_argument("multiply: incompatible component shapes");

    SpectralField ad = a, bd = b;
    dealias(ad);
    dealias(bd);
    const PhysicalField pa = to_physical(ad), pb = to_physical(bd);
    const int comps = std::max(a.components, b.components);
    PhysicalField prod(a.grid, comps);
    const std::size_t pts = a.grid.points();
    for (int c = 0; c < comps; ++c) {
        const double* la = pa.lane(broadcast_a ? 0 : c);
        const double* lb = pb.lane(broadcast_b ? 0 : c);
        double* lo = prod.lane(c);
        for (std::size_t i = 0; i < pts; ++i) lo[i] = la[i] * lb[i];
    }
    SpectralField out = to_spectral(prod);
    dealias(out);
    return out;
}

/// Dot product of two vector fields (dealiased), d x d -> scalar.
inline SpectralField dot_product(const SpectralField& u, const SpectralField& v) {
    check_same_grid(u, v, "dot_product");
    if (u.components != v.components) throw std::invalid_argument("dot_product: component mismatch");
    SpectralField out(u.grid, 1);
    for (int c = 0; c < u.components; ++c) out += multiply(u.component(c), v.component(c));
    return out;
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

/// Pointwise Euclidean magnitude over components.
inline std::vector<double> magnitude_samples(const PhysicalField& f) {
    const std::size_t pts = f.grid.points();
    std::vector<double> mag(pts, 0.0);
    for (int c = 0; c < f.components; ++c) {
        const double* l = f.lane(c);
        for (std::size_t i = 0; i < pts; ++i) mag[i] += l[i] * l[i];
    }
    for (auto& v : mag) v = std::sqrt(v);
    return mag;
}

/// L^p norm by rectangle-rule quadrature with Lebesgue measure; p = inf is
/// the max over grid samples. Vector fields use the pointwise magnitude.
inline double lp_norm(const PhysicalField& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    const auto mag = magnitude_samples(f);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : mag) m = std::max(m, v);
        return m;
    }
    double s = 0.0;
    for (double v : mag) s += std::pow(v, p);
    return std::pow(f.grid.cell_volume() * s, 1.0 / p);
}

inline double lp_norm(const SpectralField& f, double p) { return lp_norm(to_physical(f), p); }

/// L^2 norm straight from Parseval: ||f||_2^2 = L^d * sum |f_hat|^2.
inline double l2_norm_spectral(const SpectralField& f) {
    double s = 0.0;
    for (const auto& v : f.coeff) s += std::norm(v);
    return std::sqrt(f.grid.volume() * s);
}

// ---------------------------------------------------------------------------
// simple generators
// ---------------------------------------------------------------------------

/// Sample a scalar function on the lattice.
inline PhysicalField sample_scalar(const Grid& g, const std::function<double(double, double, double)>& fn) {
    PhysicalField out(g, 1);
    const std::size_t pts = g.points();
    for (std::size_t i = 0; i < pts; ++i) {
        const auto ix = g.unflatten(i);
        out.at(0, i) = fn(g.coord(ix[0]), g.coord(ix[1]), g.dim == 3 ? g.coord(ix[2]) : 0.0);
    }
    return out;
}

/// sin(m . (2pi/L) x) as a spectral scalar field.
inline SpectralField single_mode_sin(const Grid& g, const std::array<int, 3>& m, double amplitude = 1.0) {
    const double ku = g.k_unit();
    return to_spectral(sample_scalar(g, [&](double x, double y, double z) {
        return amplitude * std::sin(ku * (m[0] * x + m[1] * y + m[2] * z));
    }));
}

inline SpectralField single_mode_cos(const Grid& g, const std::array<int, 3>& m, double amplitude = 1.0) {
    const double ku = g.k_unit();
    return to_spectral(sample_scalar(g, [&](double x, double y, double z) {
        return amplitude * std::cos(ku * (m[0] * x + m[1] * y + m[2] * z));
    }));
}

inline SpectralField zero_field(const Grid& g, int comps) { return SpectralField(g, comps); }

/// Drop the spatial mean of every component.
inline void zero_mean(SpectralField& f) {
    for (int c = 0; c < f.components; ++c) f.at(c, 0) = 0.0;
}

}  // namespace vvb
