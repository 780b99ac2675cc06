#pragma once

// Exponent bookkeeping shared by the Duhamel probes, the norm monitor, the
// solver and config validation. Both Lebesgue-exponent families are generated
// here from (d, p, r) so they cannot drift apart between modules.

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vvb {

enum class Regime { theorem1, theorem2 };

inline const char* regime_name(Regime r) { return r == Regime::theorem1 ? "theorem1" : "theorem2"; }

/// Time weights of the weighted (theorem2) regime, with p1 read as p.
struct WeightExponents {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

/// Unweighted space exponents: u in L^{2r} L^{q_u}, grad u in L^{2r} L^{q_gu}
/// and L^r L^{q_pi}, pressure in L^r L^{q_pi}, forcing g in L^r L^{q_g}.
struct Theorem1Family {
    double q_u = 0.0;      // dr/(r-1)
    double q_gu = 0.0;     // dr/(2r-1)
    double q_pi = 0.0;     // dr/(2(r-1))
    double q_g = 0.0;      // dr/(3r-2)
};

/// Weighted-regime space exponents p* = dp/(d-p), p2 = 3pd/(2p+d),
/// p3 = 3pd/(2(d-p)), so that 1/p = 1/p2 + 1/p3.
struct Theorem2Family {
    double p_star = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    WeightExponents w;
};

inline Theorem1Family make_theorem1_family(int d, double r) {
    Theorem1Family f;
    f.q_u = d * r / (r - 1.0);
    f.q_gu = d * r / (2.0 * r - 1.0);
    f.q_pi = d * r / (2.0 * (r - 1.0));
    f.q_g = d * r / (3.0 * r - 2.0);
    return f;
}

inline Theorem2Family make_theorem2_family(int d, double p, double r) {
    Theorem2Family f;
    f.p_star = d * p / (d - p);
    f.p2 = 3.0 * p * d / (2.0 * p + d);
    f.p3 = 3.0 * p * d / (2.0 * (d - p));
    f.w.alpha = 0.5 * (3.0 - d / p) - 1.0 / r;
    f.w.beta = 0.5 * (2.0 - d / f.p2) - 1.0 / (2.0 * r);
    f.w.gamma1 = 0.5 * (1.0 - d / f.p3) - 1.0 / (2.0 * r);
    f.w.gamma2 = 0.5 * (1.0 - d / f.p3);
    return f;
}

namespace detail {
inline std::string violation(const char* name, double lhs, const char* rel, double rhs) {
    std::ostringstream os;
    os << name << ": " << lhs << " " << rel << " " << rhs << " violated (margin " << (rhs - lhs) << ")";
    return os.str();
}
}  // namespace detail

/// Admissibility of (d, p, r) for the unweighted regime:
/// r in (1, inf), p in (1, dr/(2r-1)).
inline std::vector<std::string> theorem1_violations(int d, double p, double r) {
    std::vector<std::string> v;
    if (!(r > 1.0)) v.push_back(detail::violation("r > 1", r, ">", 1.0));
    if (!(p > 1.0)) v.push_back(detail::violation("p > 1", p, ">", 1.0));
    const double p_cap = d * r / (2.0 * r - 1.0);
    if (!(p < p_cap)) v.push_back(detail::violation("p < dr/(2r-1)", p, "<", p_cap));
    return v;
}

/// Admissibility for the weighted regime: p in (2d/3, d), r in (1, inf) and
/// the three constraints tying 1/r to d/p. All three are evaluated and
/// reported with margins; none is short-circuited.
inline std::vector<std::string> theorem2_violations(int d, double p, double r) {
    std::vector<std::string> v;
    if (!(r > 1.0)) v.push_back(detail::violation("r > 1", r, ">", 1.0));
    if (!(p > 2.0 * d / 3.0)) v.push_back(detail::violation("p > 2d/3", p, ">", 2.0 * d / 3.0));
    if (!(p < d)) v.push_back(detail::violation("p < d", p, "<", static_cast<double>(d)));
    const double lhs1 = 2.0 / 3.0 - d / (6.0 * p);
    const double rhs1 = 0.5 - 1.0 / (2.0 * r);
    if (!(lhs1 < rhs1)) v.push_back(detail::violation("2/3 - d/(6p) < 1/2 - 1/(2r)", lhs1, "<", rhs1));
    const double rhs2 = (d / p - 1.0) / 3.0;
    if (!(1.0 / r < rhs2)) v.push_back(detail::violation("1/r < (1/3)(d/p - 1)", 1.0 / r, "<", rhs2));
    const double rhs3 = 4.0 / 3.0 - d / p;
    if (!(1.0 / r < rhs3)) v.push_back(detail::violation("1/r < 4/3 - d/p", 1.0 / r, "<", rhs3));
    return v;
}

inline std::vector<std::string> regime_violations(Regime regime, int d, double p, double r) {
    return regime == Regime::theorem1 ? theorem1_violations(d, p, r) : theorem2_violations(d, p, r);
}

/// Upper bound for the data-regularity increment of the approximation
/// argument: min{1/(2r), 1 - 1/r, 2(d/p - 2 + 1/r)}.
inline double eps_reg_cap(int d, double p, double r) {
    return std::min({1.0 / (2.0 * r), 1.0 - 1.0 / r, 2.0 * (d / p - 2.0 + 1.0 / r)});
}

inline void require_admissible(Regime regime, int d, double p, double r) {
    const auto v = regime_violations(regime, d, p, r);
    if (!v.empty()) {
        std::string msg = "inadmissible (d, p, r) for ";
        msg += regime_name(regime);
        for (const auto& s : v) msg += "\n  " + s;
        throw std::invalid_argument(msg);
    }
}

}  // namespace vvb
