#pragma once

// Time convolutions against the heat semigroup:
//   C f(t) = int_0^t e^{(t-s)L} f(s) ds
//   B f(t) = int_0^t grad e^{(t-s)L} f(s) ds
//   A f(t) = int_0^t L e^{(t-s)L} f(s) ds
// Quadrature is a per-mode exponential integrator: the factor e^{-|k|^2(t-s)}
// is kept exact, the forcing is trapezoidal (linear in s on each interval),
// so the scheme is 2nd order in the node spacing and handles stiff |k|^2
// without restriction. Damped variants multiply the kernel by
// h(s,t) = exp{-lambda (H(t)-H(s))} with H piecewise linear on the grid.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "vvb/damping.hpp"
#include "vvb/harmonic.hpp"
#include "vvb/norms.hpp"
#include "vvb/timeline.hpp"

namespace vvb {

enum class DuhamelKind { A, B, C };

namespace detail {

// I0(a, tau) = int_0^tau e^{-a(tau-u)} du       = tau * phi1(a tau)
// I1(a, tau) = int_0^tau e^{-a(tau-u)} u/tau du = tau * psi(a tau)
// Trapezoidal-exponential weights: left node gets I0 - I1, right node I1.
inline double phi1(double z) {
    if (z < 1e-5) return 1.0 - z / 2.0 + z * z / 6.0;
    return -std::expm1(-z) / z;
}
inline double psi(double z) {
    if (z < 1e-4) return 0.5 - z / 6.0 + z * z / 24.0;
    return (z + std::expm1(-z)) / (z * z);
}
inline void local_weights(double a, double tau, double& w_left, double& w_right) {
    const double z = a * tau;
    const double i0 = tau * phi1(z);
    const double i1 = tau * psi(z);
    w_left = i0 - i1;
    w_right = i1;
}

}  // namespace detail

/// C f on every timeline node via the semigroup recurrence
/// v(t_{j+1}) = e^{-a dt} h(t_j, t_{j+1}) v(t_j) + local interval integral.
/// With `weight == nullptr` this is the plain operator.
inline Timeline duhamel_C_all(const Timeline& f, const DampingWeight* weight = nullptr) {
    f.validate();
    const Grid& g = f.snapshots[0].grid;
    const int comps = f.snapshots[0].components;
    const std::size_t pts = g.points();
    const std::size_t M = f.nodes() - 1;

    Timeline out;
    out.times = f.times;
    out.snapshots.assign(f.nodes(), SpectralField(g, comps));

    for (std::size_t j = 0; j < M; ++j) {
        const double tau = f.times[j + 1] - f.times[j];
        double hrate = 0.0, hfac = 1.0;
        if (weight) {
            const double dH = weight->cumulative[j + 1] - weight->cumulative[j];
            hrate = weight->lambda * dH / tau;
            hfac = std::exp(-weight->lambda * dH);
        }
        for (std::size_t i = 0; i < pts; ++i) {
            const double a = g.k_sq(i);
            const double decay = std::exp(-a * tau) * hfac;
            double wl, wr;
            detail::local_weights(a + hrate, tau, wl, wr);
            for (int c = 0; c < comps; ++c)
                out.snapshots[j + 1].at(c, i) =
                    decay * out.snapshots[j].at(c, i) + wl * f.snapshots[j].at(c, i) + wr * f.snapshots[j + 1].at(c, i);
        }
    }
    return out;
}

/// A f = Laplacian of C f: per-mode factor -|k|^2.
inline Timeline duhamel_A_all(const Timeline& f, const DampingWeight* weight = nullptr) {
    Timeline out = duhamel_C_all(f, weight);
    for (auto& snap : out.snapshots)
        snap = apply_multiplier(
            snap, [](const std::array<int, 3>&, double ksq) { return std::complex<double>(-ksq, 0.0); }, false);
    return out;
}

/// B f = gradient of C f; scalar input gives a d-component output, an
/// input with c components gives d*c components (gradient of each).
inline Timeline duhamel_B_all(const Timeline& f, const DampingWeight* weight = nullptr) {
    Timeline conv = duhamel_C_all(f, weight);
    const Grid& g = conv.snapshots[0].grid;
    const int c_in = conv.snapshots[0].components;
    Timeline out;
    out.times = conv.times;
    out.snapshots.reserve(conv.nodes());
    for (auto& snap : conv.snapshots) {
        SpectralField gr(g, g.dim * c_in);
        for (int c = 0; c < c_in; ++c)
            for (int a = 0; a < g.dim; ++a) gr.set_component(a * c_in + c, derivative(snap.component(c), a));
        out.snapshots.push_back(std::move(gr));
    }
    return out;
}

inline Timeline duhamel_all(DuhamelKind kind, const Timeline& f, const DampingWeight* weight = nullptr) {
    switch (kind) {
        case DuhamelKind::A: return duhamel_A_all(f, weight);
        case DuhamelKind::B: return duhamel_B_all(f, weight);
        case DuhamelKind::C: return duhamel_C_all(f, weight);
    }
    throw std::logic_error("duhamel_all: bad kind");
}

namespace detail {

// Convolution value at one time t in [0, T]: full intervals by recurrence,
// then the partial interval with the forcing interpolated linearly.
inline SpectralField duhamel_C_at(const Timeline& f, double t) {
    f.validate();
    const Grid& g = f.snapshots[0].grid;
    const int comps = f.snapshots[0].components;
    const std::size_t pts = g.points();
    if (t < 0.0 || t > f.horizon() * (1.0 + 1e-12))
        throw std::invalid_argument("duhamel: t outside the timeline");

    const std::size_t jstar = f.interval_of(t);
    SpectralField acc(g, comps);
    for (std::size_t j = 0; j < jstar; ++j) {
        const double tau = f.times[j + 1] - f.times[j];
        for (std::size_t i = 0; i < pts; ++i) {
            const double a = g.k_sq(i);
            double wl, wr;
            local_weights(a, tau, wl, wr);
            const double decay = std::exp(-a * tau);
            for (int c = 0; c < comps; ++c)
                acc.at(c, i) = decay * acc.at(c, i) + wl * f.snapshots[j].at(c, i) + wr * f.snapshots[j + 1].at(c, i);
        }
    }
    const double tau = t - f.times[jstar];
    if (tau > 0.0) {
        const double full = f.times[jstar + 1] - f.times[jstar];
        const double frac = tau / full;
        for (std::size_t i = 0; i < pts; ++i) {
            const double a = g.k_sq(i);
            double wl, wr;
            local_weights(a, tau, wl, wr);
            const double decay = std::exp(-a * tau);
            for (int c = 0; c < comps; ++c) {
                const std::complex<double> f_end =
                    (1.0 - frac) * f.snapshots[jstar].at(c, i) + frac * f.snapshots[jstar + 1].at(c, i);
                acc.at(c, i) = decay * acc.at(c, i) + wl * f.snapshots[jstar].at(c, i) + wr * f_end;
            }
        }
    }
    return acc;
}

}  // namespace detail

inline SpectralField duhamel_C(const Timeline& f, double t) { return detail::duhamel_C_at(f, t); }

inline SpectralField duhamel_A(const Timeline& f, double t) {
    return apply_multiplier(
        detail::duhamel_C_at(f, t),
        [](const std::array<int, 3>&, double ksq) { return std::complex<double>(-ksq, 0.0); }, false);
}

inline SpectralField duhamel_B(const Timeline& f, double t) {
    const SpectralField conv = detail::duhamel_C_at(f, t);
    const Grid& g = conv.grid;
    SpectralField out(g, g.dim * conv.components);
    for (int c = 0; c < conv.components; ++c)
        for (int a = 0; a < g.dim; ++a) out.set_component(a * conv.components + c, derivative(conv.component(c), a));
    return out;
}

// ---------------------------------------------------------------------------
// weighted operator probes
// ---------------------------------------------------------------------------

/// One weighted mapping ||t^{a_out} Op f||_{L^{rho_out} L^{q_out}} against
/// ||t^{a_in} f||_{L^{rho_in} L^{q_in}}.
struct WeightedProbeSpec {
    DuhamelKind kind = DuhamelKind::C;
    SpaceTimeNormSpec in;
    SpaceTimeNormSpec out;
    const char* name = "";
};

struct WeightedProbeResult {
    double in_norm = 0.0;
    double out_norm = 0.0;
    double ratio = 0.0;  // defined as 0 when the input norm vanishes
};

inline WeightedProbeResult duhamel_weighted(const WeightedProbeSpec& spec, const Timeline& f) {
    spec.in.validate();
    spec.out.validate();
    WeightedProbeResult r;
    r.in_norm = spacetime_norm(f, spec.in);
    r.out_norm = spacetime_norm(duhamel_all(spec.kind, f), spec.out);
    r.ratio = r.in_norm > 0.0 ? r.out_norm / r.in_norm : 0.0;
    return r;
}

// ---------------------------------------------------------------------------
// damped operator probes (factorized forcing f = v * omega)
// ---------------------------------------------------------------------------

struct DampedProbeResult {
    double out_norm = 0.0;    // ||Op_lambda(v omega)|| in the probe's norm
    double bound_shape = 0.0; // lambda^{-decay} times the factor norms
    double lambda = 0.0;
};

/// Plain damped shape: h built from ||v||_{q1}^{2r}; the bound side is
/// lambda^{-1/(4r)} ||v||^{1/2}_{L^{2r} L^{q1}} ||omega||_{L^{2r} L^{q2}},
/// and the output is measured in L^{2r} L^{q_out}.
inline DampedProbeResult duhamel_damped_plain(DuhamelKind kind, const Timeline& v, const Timeline& omega,
                                              double r, double q1, double q2, double q_out, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("duhamel_damped: lambda must be positive");
    if (kind == DuhamelKind::A) throw std::invalid_argument("duhamel_damped: kind must be B or C");
    const DampingWeight w = make_damping_weight(v.times, damping_integrand(v, q1, r), lambda);

    Timeline prod;
    prod.times = v.times;
    prod.snapshots.reserve(v.nodes());
    for (std::size_t i = 0; i < v.nodes(); ++i) prod.snapshots.push_back(multiply(v.snapshots[i], omega.snapshots[i]));

    DampedProbeResult res;
    res.lambda = lambda;
    res.out_norm = spacetime_norm(duhamel_all(kind, prod, &w), SpaceTimeNormSpec{2.0 * r, q_out, 0.0});
    const double vn = spacetime_norm(v, SpaceTimeNormSpec{2.0 * r, q1, 0.0});
    const double on = spacetime_norm(omega, SpaceTimeNormSpec{2.0 * r, q2, 0.0});
    res.bound_shape = std::pow(lambda, -1.0 / (4.0 * r)) * std::sqrt(vn) * on;
    return res;
}

/// Weighted damped shape: h built from t^{2r gamma1}||v||_{p3}^{2r} +
/// t^{2r beta}||omega||_{p2}^{2r}; bound side decays like lambda^{-1/(2r)}.
/// Output norm: t^{beta} in L^{2r} L^{p2} for B, t^{gamma1} in L^{2r} L^{p3}
/// for C.
inline DampedProbeResult duhamel_damped_weighted(DuhamelKind kind, const Timeline& v, const Timeline& omega,
                                                 double r, double p2, double p3, double beta, double gamma1,
                                                 double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("duhamel_damped: lambda must be positive");
    if (kind == DuhamelKind::A) throw std::invalid_argument("duhamel_damped: kind must be B or C");
    const auto integrand = add_integrands(damping_integrand(v, p3, r, gamma1), damping_integrand(omega, p2, r, beta));
    const DampingWeight w = make_damping_weight(v.times, integrand, lambda);

    Timeline prod;
    prod.times = v.times;
    prod.snapshots.reserve(v.nodes());
    for (std::size_t i = 0; i < v.nodes(); ++i) prod.snapshots.push_back(multiply(v.snapshots[i], omega.snapshots[i]));

    DampedProbeResult res;
    res.lambda = lambda;
    if (kind == DuhamelKind::B)
        res.out_norm = spacetime_norm(duhamel_B_all(prod, &w), SpaceTimeNormSpec{2.0 * r, p2, beta});
    else
        res.out_norm = spacetime_norm(duhamel_C_all(prod, &w), SpaceTimeNormSpec{2.0 * r, p3, gamma1});
    const double om = spacetime_norm(damp_timeline(omega, w), SpaceTimeNormSpec{2.0 * r, p2, beta});
    res.bound_shape = std::pow(lambda, -1.0 / (2.0 * r)) * om;
    return res;
}

}  // namespace vvb
