#pragma once

// Test-side quadrature oracles, kept independent of the library's own
// integration routines.

#include <cmath>
#include <functional>

namespace oracles {

/// Composite Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Simpson on a log axis: integral of f(t) dt/t over [a, b].
inline double simpson_log(const std::function<double(double)>& f, double a, double b, int n = 4000) {
    return simpson([&](double u) { return f(std::exp(u)); }, std::log(a), std::log(b), n);
}

/// ||K(1,.)||_{L^q(R^d)} for K(t,x) = (4 pi t)^{-d/2} exp(-|x|^2/(4t)),
/// by radial quadrature (independent of the library's closed form).
inline double heat_kernel_norm_quadrature(double q, int d) {
    const double sphere = 2.0 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
    const double val = simpson(
        [&](double rho) {
            const double k = std::pow(4.0 * M_PI, -d / 2.0) * std::exp(-rho * rho / 4.0);
            return std::pow(k, q) * std::pow(rho, d - 1);
        },
        0.0, 60.0, 20000);
    return std::pow(sphere * val, 1.0 / q);
}

/// ||grad K(1,.)||_{L^q(R^d)} by radial quadrature.
inline double grad_heat_kernel_norm_quadrature(double q, int d) {
    const double sphere = 2.0 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
    const double val = simpson(
        [&](double rho) {
            const double k = std::pow(4.0 * M_PI, -d / 2.0) * std::exp(-rho * rho / 4.0);
            return std::pow(rho / 2.0 * k, q) * std::pow(rho, d - 1);
        },
        0.0, 60.0, 20000);
    return std::pow(sphere * val, 1.0 / q);
}

}  // namespace oracles
