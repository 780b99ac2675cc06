#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "vvb/timeline.hpp"

namespace vvb {

/// Exponential damping weight h(s,t) = exp{-lambda (H(t) - H(s))} with the
/// integrand accumulated to H on the timeline nodes by trapezoid.
/// h(t,t) = 1 and h is multiplicative across nodes by construction.
struct DampingWeight {
    double lambda = 0.0;
    std::vector<double> times;
    std::vector<double> cumulative;  // H(t_i), H(0) = 0

    double h(std::size_t i, std::size_t j) const {
        return std::exp(-lambda * (cumulative[j] - cumulative[i]));
    }
    double h_from_zero(std::size_t j) const { return std::exp(-lambda * cumulative[j]); }
    double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

/// Build from per-node integrand samples g_i >= 0: H' = g.
inline DampingWeight make_damping_weight(const std::vector<double>& times, const std::vector<double>& integrand,
                                         double lambda) {
    if (times.size() != integrand.size())
        throw std::invalid_argument("make_damping_weight: size mismatch");
    if (lambda < 0.0) throw std::invalid_argument("make_damping_weight: lambda must be >= 0");
    DampingWeight w;
    w.lambda = lambda;
    w.times = times;
    w.cumulative.assign(times.size(), 0.0);
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        w.cumulative[i + 1] =
            w.cumulative[i] + 0.5 * (times[i + 1] - times[i]) * (integrand[i] + integrand[i + 1]);
    return w;
}

/// Integrand ||v(t)||_{L^{q}}^{2r} of a field path, optionally with a time
/// weight t^{2 r a} (the weighted-regime variant).
inline std::vector<double> damping_integrand(const Timeline& v, double q, double r, double a = 0.0) {
    std::vector<double> g(v.nodes());
    for (std::size_t i = 0; i < v.nodes(); ++i) {
        const double tw = a == 0.0 ? 1.0 : std::pow(v.times[i], 2.0 * r * a);
        g[i] = tw * std::pow(lp_norm(v.snapshots[i], q), 2.0 * r);
    }
    return g;
}

inline std::vector<double> add_integrands(std::vector<double> a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

/// Apply h(0, t_i) to every snapshot.
inline Timeline damp_timeline(const Timeline& f, const DampingWeight& w) {
    Timeline out = f;
    for (std::size_t i = 0; i < out.nodes(); ++i) out.snapshots[i] *= w.h_from_zero(i);
    return out;
}

}  // namespace vvb
