#pragma once

// Turns the theorem displays into numbers: the damped contraction increment
// delta-U between consecutive iterates, and per-run inequality reports with
// inferred constants.

#include <string>
#include <utility>
#include <vector>

#include "vvb/damping.hpp"
#include "vvb/duhamel.hpp"
#include "vvb/exponents.hpp"
#include "vvb/norms.hpp"

namespace vvb {

/// Everything exponent-shaped a solver run needs, generated once from
/// (d, p, r, regime) so the families cannot drift between modules.
struct SolverExponents {
    int d = 2;
    double p = 1.2;
    double r = 2.0;
    Regime regime = Regime::theorem1;
    double eps_reg = 0.0;  // data-regularity increment; 0 collapses the extra delta-U norms
    Theorem1Family fam1;
    Theorem2Family fam2;

    // the two delta-U companion exponents 2dr/((2-eps)r-2), 2dr/((4-eps)r-2)
    double q_eps_u() const { return 2.0 * d * r / ((2.0 - eps_reg) * r - 2.0); }
    double q_eps_gu() const { return 2.0 * d * r / ((4.0 - eps_reg) * r - 2.0); }
};

inline SolverExponents make_solver_exponents(int d, double p, double r, Regime regime, double eps_reg = -1.0) {
    require_admissible(regime, d, p, r);
    SolverExponents ex;
    ex.d = d;
    ex.p = p;
    ex.r = r;
    ex.regime = regime;
    ex.fam1 = make_theorem1_family(d, r);
    ex.fam2 = p < d ? make_theorem2_family(d, p, r) : Theorem2Family{};
    const double cap = eps_reg_cap(d, p, r);
    ex.eps_reg = eps_reg >= 0.0 ? eps_reg : std::max(0.0, 0.9 * cap);
    if (eps_reg >= 0.0 && ex.eps_reg > std::max(cap, 0.0) + 1e-15)
        throw std::invalid_argument("SolverExponents: eps_reg exceeds min{1/(2r), 1-1/r, 2(d/p-2+1/r)}");
    return ex;
}

// ---------------------------------------------------------------------------
// timeline helpers
// ---------------------------------------------------------------------------

/// Components [c0, c1) of every snapshot.
inline Timeline timeline_components(const Timeline& u, int c0, int c1) {
    Timeline out;
    out.times = u.times;
    out.snapshots.reserve(u.nodes());
    for (const auto& s : u.snapshots) {
        SpectralField part(s.grid, c1 - c0);
        for (int c = c0; c < c1; ++c) part.set_component(c - c0, s.component(c));
        out.snapshots.push_back(std::move(part));
    }
    return out;
}

inline Timeline timeline_horizontal(const Timeline& u) {
    return timeline_components(u, 0, u.snapshots[0].grid.dim - 1);
}
inline Timeline timeline_vertical(const Timeline& u) {
    const int d = u.snapshots[0].grid.dim;
    return timeline_components(u, d - 1, d);
}

/// Full gradient of every snapshot (components multiply by d).
inline Timeline timeline_gradient(const Timeline& u) {
    Timeline out;
    out.times = u.times;
    out.snapshots.reserve(u.nodes());
    for (const auto& s : u.snapshots) {
        const Grid& g = s.grid;
        SpectralField gr(g, g.dim * s.components);
        for (int c = 0; c < s.components; ++c)
            for (int a = 0; a < g.dim; ++a) gr.set_component(a * s.components + c, derivative(s.component(c), a));
        out.snapshots.push_back(std::move(gr));
    }
    return out;
}

inline Timeline timeline_difference(const Timeline& a, const Timeline& b) {
    if (a.times != b.times) throw std::invalid_argument("timeline_difference: grid mismatch");
    Timeline out;
    out.times = a.times;
    out.snapshots.reserve(a.nodes());
    for (std::size_t i = 0; i < a.nodes(); ++i) out.snapshots.push_back(a.snapshots[i] - b.snapshots[i]);
    return out;
}

// ---------------------------------------------------------------------------
// damping weight of an iterate's vertical component
// ---------------------------------------------------------------------------

/// Unweighted regime: integrand ||u^d||_{q_u}^{2r} + ||grad u^d||_{q_gu}^{2r};
/// weighted regime: t^{2r gamma1}||u^d||_{p3}^{2r} + t^{2r beta}||grad u^d||_{p2}^{2r}.
inline DampingWeight vertical_damping_weight(const Timeline& u, double lambda, const SolverExponents& ex) {
    const Timeline ud = timeline_vertical(u);
    const Timeline gud = timeline_gradient(ud);
    std::vector<double> integrand;
    if (ex.regime == Regime::theorem1) {
        integrand = add_integrands(damping_integrand(ud, ex.fam1.q_u, ex.r),
                                   damping_integrand(gud, ex.fam1.q_gu, ex.r));
    } else {
        integrand = add_integrands(damping_integrand(ud, ex.fam2.p3, ex.r, ex.fam2.w.gamma1),
                                   damping_integrand(gud, ex.fam2.p2, ex.r, ex.fam2.w.beta));
    }
    return make_damping_weight(u.times, integrand, lambda);
}

// ---------------------------------------------------------------------------
// delta-U
// ---------------------------------------------------------------------------

/// Damped difference norm between consecutive velocity iterates. The damping
/// weight is built from the PREVIOUS iterate's vertical component.
inline double delta_u(const Timeline& u_prev, const Timeline& u_next, double lambda, const SolverExponents& ex) {
    const Timeline du = timeline_difference(u_next, u_prev);
    const Timeline gdu = timeline_gradient(du);
    const DampingWeight w = vertical_damping_weight(u_prev, lambda, ex);
    const Timeline du_l = damp_timeline(du, w);
    const Timeline gdu_l = damp_timeline(gdu, w);
    const double r2 = 2.0 * ex.r;
    const double inf = std::numeric_limits<double>::infinity();

    if (ex.regime == Regime::theorem1) {
        double v = spacetime_norm(du_l, SpaceTimeNormSpec{r2, ex.fam1.q_u, 0.0}) +
                   spacetime_norm(gdu_l, SpaceTimeNormSpec{r2, ex.fam1.q_gu, 0.0});
        if (ex.eps_reg > 0.0) {
            v += spacetime_norm(du_l, SpaceTimeNormSpec{r2, ex.q_eps_u(), 0.0}) +
                 spacetime_norm(gdu_l, SpaceTimeNormSpec{r2, ex.q_eps_gu(), 0.0});
        } else {
            // eps_reg = 0 collapses the companion exponents onto the first two
            v *= 2.0;
        }
        return v;
    }
    return spacetime_norm(du_l, SpaceTimeNormSpec{r2, ex.fam2.p3, ex.fam2.w.gamma1}) +
           spacetime_norm(du_l, SpaceTimeNormSpec{inf, ex.fam2.p3, ex.fam2.w.gamma2}) +
           spacetime_norm(gdu_l, SpaceTimeNormSpec{r2, ex.fam2.p2, ex.fam2.w.beta});
}

// ---------------------------------------------------------------------------
// inequality reports
// ---------------------------------------------------------------------------

struct InequalityReport {
    std::string name;
    std::vector<std::pair<std::string, double>> ingredients;  // each lhs norm separately
    double lhs = 0.0;
    std::string rhs_shape;
    double inferred_c = 0.0;
    Regime regime = Regime::theorem1;
    bool diverged = false;
};

/// The active regime's theorem display evaluated on one run. eta and the
/// data norms come from the smallness report; theta_sup / theta0_sup are the
/// space-time and initial sup norms of the temperature.
inline std::vector<InequalityReport> theorem_report(const Timeline& u, const Timeline& pi, double theta_sup,
                                                    double theta0_sup, double eta_value, double ud_besov,
                                                    const SolverExponents& ex, bool diverged = false) {
    const Timeline uh = timeline_horizontal(u);
    const Timeline ud = timeline_vertical(u);
    const Timeline guh = timeline_gradient(uh);
    const Timeline gud = timeline_gradient(ud);
    const double r2 = 2.0 * ex.r;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<InequalityReport> reports;
    auto push = [&](InequalityReport rep) {
        rep.regime = ex.regime;
        rep.diverged = diverged;
        reports.push_back(std::move(rep));
    };

    auto infer = [](double lhs, double denom) { return denom > 0.0 ? lhs / denom : 0.0; };

    if (ex.regime == Regime::theorem1) {
        InequalityReport h;
        h.name = "horizontal";
        h.ingredients = {
            {"grad_uh_L2r_Lqgu", spacetime_norm(guh, SpaceTimeNormSpec{r2, ex.fam1.q_gu, 0.0})},
            {"grad_uh_Lr_Lqpi", spacetime_norm(guh, SpaceTimeNormSpec{ex.r, ex.fam1.q_pi, 0.0})},
            {"uh_L2r_Lqu", spacetime_norm(uh, SpaceTimeNormSpec{r2, ex.fam1.q_u, 0.0})},
        };
        for (auto& kv : h.ingredients) h.lhs += kv.second;
        h.rhs_shape = "C1 * eta";
        h.inferred_c = infer(h.lhs, eta_value);
        push(h);

        InequalityReport v;
        v.name = "vertical";
        v.ingredients = {
            {"grad_ud_L2r_Lqgu", spacetime_norm(gud, SpaceTimeNormSpec{r2, ex.fam1.q_gu, 0.0})},
            {"grad_ud_Lr_Lqpi", spacetime_norm(gud, SpaceTimeNormSpec{ex.r, ex.fam1.q_pi, 0.0})},
            {"ud_L2r_Lqu", spacetime_norm(ud, SpaceTimeNormSpec{r2, ex.fam1.q_u, 0.0})},
        };
        for (auto& kv : v.ingredients) v.lhs += kv.second;
        v.rhs_shape = "C2 * ||ud0||_B + C3";
        v.inferred_c = infer(v.lhs, ud_besov + 1.0);  // convention: C2 = C3
        push(v);

        InequalityReport pr;
        pr.name = "pressure";
        pr.ingredients = {{"pi_Lr_Lqpi", spacetime_norm(pi, SpaceTimeNormSpec{ex.r, ex.fam1.q_pi, 0.0})}};
        pr.lhs = pr.ingredients[0].second;
        pr.rhs_shape = "C4 * eta";
        pr.inferred_c = infer(pr.lhs, eta_value);
        push(pr);
    } else {
        const auto& f2 = ex.fam2;
        InequalityReport h;
        h.name = "horizontal";
        h.ingredients = {
            {"ta_grad_uh_L2r_Lpstar", spacetime_norm(guh, SpaceTimeNormSpec{r2, f2.p_star, f2.w.alpha})},
            {"tb_grad_uh_L2r_Lp2", spacetime_norm(guh, SpaceTimeNormSpec{r2, f2.p2, f2.w.beta})},
            {"tg1_uh_L2r_Lp3", spacetime_norm(uh, SpaceTimeNormSpec{r2, f2.p3, f2.w.gamma1})},
            {"tg2_uh_Linf_Lp3", spacetime_norm(uh, SpaceTimeNormSpec{inf, f2.p3, f2.w.gamma2})},
        };
        for (auto& kv : h.ingredients) h.lhs += kv.second;
        h.rhs_shape = "C1 * eta";
        h.inferred_c = infer(h.lhs, eta_value);
        push(h);

        InequalityReport v;
        v.name = "vertical";
        v.ingredients = {
            {"ta_grad_ud_L2r_Lpstar", spacetime_norm(gud, SpaceTimeNormSpec{r2, f2.p_star, f2.w.alpha})},
            {"tb_grad_ud_L2r_Lp2", spacetime_norm(gud, SpaceTimeNormSpec{r2, f2.p2, f2.w.beta})},
            {"tg1_ud_L2r_Lp3", spacetime_norm(ud, SpaceTimeNormSpec{r2, f2.p3, f2.w.gamma1})},
            {"tg2_ud_Linf_Lp3", spacetime_norm(ud, SpaceTimeNormSpec{inf, f2.p3, f2.w.gamma2})},
        };
        for (auto& kv : v.ingredients) v.lhs += kv.second;
        v.rhs_shape = "C2 * ||ud0||_B + C3";
        v.inferred_c = infer(v.lhs, ud_besov + 1.0);
        push(v);

        InequalityReport pr;
        pr.name = "pressure";
        pr.ingredients = {{"ta_pi_Lr_Lpstar", spacetime_norm(pi, SpaceTimeNormSpec{ex.r, f2.p_star, f2.w.alpha})}};
        pr.lhs = pr.ingredients[0].second;
        pr.rhs_shape = "C4 * eta";
        pr.inferred_c = infer(pr.lhs, eta_value);
        push(pr);
    }

    InequalityReport mp;
    mp.name = "maximum_principle";
    mp.ingredients = {{"theta_sup", theta_sup}, {"theta0_sup", theta0_sup}};
    mp.lhs = theta_sup;
    mp.rhs_shape = "||theta0||_inf";
    mp.inferred_c = theta0_sup > 0.0 ? theta_sup / theta0_sup : 0.0;
    push(mp);

    return reports;
}

}  // namespace vvb
