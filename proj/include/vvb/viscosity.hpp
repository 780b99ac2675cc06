#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vvb/field.hpp"

namespace vvb {

/// Pointwise smooth positive viscosity law theta -> nu(theta), evaluated in
/// physical space. Must stay bounded away from zero.
struct ViscosityLaw {
    enum class Kind { constant, tanh_perturbation, user_table };
    Kind kind = Kind::constant;
    double delta = 0.0;  // nominal amplitude of nu - 1
    std::function<double(double)> evaluator = [](double) { return 1.0; };
    double nu_min = 1.0;

    double operator()(double theta) const { return evaluator(theta); }

    std::string name() const {
        switch (kind) {
            case Kind::constant: return "constant";
            case Kind::tanh_perturbation: return "tanh";
            case Kind::user_table: return "table";
        }
        return "?";
    }
};

inline ViscosityLaw constant_viscosity() { return ViscosityLaw{}; }

/// nu(theta) = 1 + delta * tanh(theta); requires |delta| < 1.
inline ViscosityLaw tanh_viscosity(double delta) {
    if (!(std::abs(delta) < 1.0)) throw std::invalid_argument("tanh_viscosity: need |delta| < 1");
    ViscosityLaw law;
    law.kind = ViscosityLaw::Kind::tanh_perturbation;
    law.delta = delta;
    law.evaluator = [delta](double theta) { return 1.0 + delta * std::tanh(theta); };
    law.nu_min = 1.0 - std::abs(delta);
    return law;
}

/// Piecewise-linear user table over (theta, nu) knots, clamped outside.
inline ViscosityLaw table_viscosity(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw std::invalid_argument("table_viscosity: need at least two knots");
    std::sort(knots.begin(), knots.end());
    double nu_min = knots.front().second, dev = 0.0;
    for (auto& kv : knots) {
        if (!(kv.second > 0.0)) throw std::invalid_argument("table_viscosity: nu must be positive");
        nu_min = std::min(nu_min, kv.second);
        dev = std::max(dev, std::abs(kv.second - 1.0));
    }
    ViscosityLaw law;
    law.kind = ViscosityLaw::Kind::user_table;
    law.delta = dev;
    law.nu_min = nu_min;
    law.evaluator = [knots](double theta) {
        if (theta <= knots.front().first) return knots.front().second;
        if (theta >= knots.back().first) return knots.back().second;
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            if (theta <= knots[i + 1].first) {
                const double w = (theta - knots[i].first) / (knots[i + 1].first - knots[i].first);
                return (1.0 - w) * knots[i].second + w * knots[i + 1].second;
            }
        }
        return knots.back().second;
    };
    return law;
}

/// Samples nu(theta) - 1 on the grid.
inline PhysicalField viscosity_deviation(const ViscosityLaw& law, const PhysicalField& theta) {
    PhysicalField out(theta.grid, 1);
    for (std::size_t i = 0; i < theta.grid.points(); ++i) out.at(0, i) = law(theta.at(0, i)) - 1.0;
    return out;
}

/// sup |nu(theta) - 1| over the grid samples.
inline double nu_deviation_sup(const ViscosityLaw& law, const PhysicalField& theta) {
    double m = 0.0;
    for (std::size_t i = 0; i < theta.grid.points(); ++i) m = std::max(m, std::abs(law(theta.at(0, i)) - 1.0));
    return m;
}

}  // namespace vvb
