#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "vvb/timeline.hpp"

namespace vvb {

/// ||t^a f||_{L^rho(0,T; L^q_x)} specification. The weight must satisfy
/// a * rho' < 1 when a > 0 and rho < inf (integrability near t = 0).
struct SpaceTimeNormSpec {
    double rho = 2.0;   // time exponent, may be inf
    double q = 2.0;     // space exponent, may be inf
    double a = 0.0;     // time weight exponent, >= 0

    void validate() const {
        if (rho < 1.0 || q < 1.0) throw std::invalid_argument("SpaceTimeNormSpec: rho, q must be >= 1");
        if (a < 0.0) throw std::invalid_argument("SpaceTimeNormSpec: weight exponent a must be >= 0");
        if (a > 0.0 && !std::isinf(rho)) {
            const double rho_conj = rho / (rho - 1.0);
            if (!(a * rho_conj < 1.0)) {
                std::ostringstream os;
                os << "SpaceTimeNormSpec: a * rho' < 1 violated (a = " << a << ", rho' = " << rho_conj
                   << ", a * rho' = " << a * rho_conj << ")";
                throw std::invalid_argument(os.str());
            }
        }
    }
};

/// Trapezoidal time quadrature of (t^a ||f(t)||_{L^q})^rho on the graded
/// grid; sup over nodes for rho = inf.
inline double spacetime_norm(const Timeline& f, const SpaceTimeNormSpec& spec) {
    spec.validate();
    const std::size_t n = f.nodes();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = spec.a == 0.0 ? 1.0 : std::pow(f.times[i], spec.a);
        g[i] = w * lp_norm(f.snapshots[i], spec.q);
    }
    if (std::isinf(spec.rho)) {
        double m = 0.0;
        for (double v : g) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dt = f.times[i + 1] - f.times[i];
        acc += 0.5 * dt * (std::pow(g[i], spec.rho) + std::pow(g[i + 1], spec.rho));
    }
    return std::pow(acc, 1.0 / spec.rho);
}

/// Scalar path variant: quadrature of (t^a |g(t)|)^rho over explicit nodes.
inline double spacetime_norm_scalar(const std::vector<double>& times, const std::vector<double>& values,
                                    double rho, double a = 0.0) {
    if (times.size() != values.size()) throw std::invalid_argument("spacetime_norm_scalar: size mismatch");
    std::vector<double> g(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        g[i] = (a == 0.0 ? 1.0 : std::pow(times[i], a)) * std::abs(values[i]);
    if (std::isinf(rho)) {
        double m = 0.0;
        for (double v : g) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        acc += 0.5 * (times[i + 1] - times[i]) * (std::pow(g[i], rho) + std::pow(g[i + 1], rho));
    return std::pow(acc, 1.0 / rho);
}

}  // namespace vvb
