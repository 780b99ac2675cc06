#pragma once

// The constructive scheme: epsilon-regularized transport, the linear Stokes
// solve with the velocity coupling resolved by an inner damped fixed point,
// pressure recovery, and the outer Picard iteration with contraction
// monitoring.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vvb/data_prep.hpp"
#include "vvb/duhamel.hpp"
#include "vvb/monitor.hpp"
#include "vvb/viscosity.hpp"

namespace vvb {

// ---------------------------------------------------------------------------
// smallness condition
// ---------------------------------------------------------------------------

struct SmallnessReport {
    double nu_dev = 0.0;
    double uh_besov = 0.0;
    double ud_besov = 0.0;
    double c_r = 1.0;
    double c0 = 0.05;
    double power = 0.0;  // 4r (theorem1) or 2r (theorem2)
    double eta = 0.0;
    Regime regime = Regime::theorem1;
    bool satisfied = false;
};

/// The scalar smallness functional (nu_dev + uh) exp{c_r ud^power}.
inline double smallness_eta(double nu_dev, double uh_besov, double ud_besov, double c_r, double power) {
    return (nu_dev + uh_besov) * std::exp(c_r * std::pow(ud_besov, power));
}

/// eta = (||nu - 1||_inf + ||u0^h||_B) exp{c_r ||u0^d||_B^{4r or 2r}}.
/// nu deviation is evaluated on the prepared temperature samples.
inline SmallnessReport eta_report(const InitialData& data, const ViscosityLaw& law, double p, double r,
                                  Regime regime, double c_r = 1.0, double c0 = 0.05) {
    require_admissible(regime, data.theta0.grid.dim, p, r);
    SmallnessReport rep;
    rep.regime = regime;
    rep.c_r = c_r;
    rep.c0 = c0;
    rep.nu_dev = nu_deviation_sup(law, data.theta0);
    rep.uh_besov = data.uh_besov;
    rep.ud_besov = data.ud_besov;
    rep.power = regime == Regime::theorem1 ? 4.0 * r : 2.0 * r;
    rep.eta = smallness_eta(rep.nu_dev, rep.uh_besov, rep.ud_besov, c_r, rep.power);
    rep.satisfied = rep.eta <= c0;
    return rep;
}

// ---------------------------------------------------------------------------
// solver configuration and state
// ---------------------------------------------------------------------------

struct SolverConfig {
    double horizon = 4.0;
    int time_nodes = 48;
    double grading = 2.0;
    double p = 1.2;
    double r = 2.0;
    Regime regime = Regime::theorem1;
    double eps = 0.0;         // transport regularizer
    double lambda = -1.0;     // < 0 selects the recipe below
    double c_r = 1.0;
    double c0 = 0.05;
    // surrogate constants of the lambda recipe (4C)^{4r} (C2 ||u0^d||_B + C3)^{2r}
    double c_surr = 0.25;
    double c2_surr = 0.5;
    double c3_surr = 0.25;
    double tol_outer = 1e-7;
    int max_outer = 40;
    double tol_inner = 1e-8;
    int max_inner = 50;
    double cfl = 0.5;
    long max_substeps = 500000;
    double eps_reg = -1.0;  // < 0 selects 0.9 * cap
    bool gronwall_monitor = true;
};

/// One Picard iterate with its norm ledger.
struct SolverState {
    int iterate = 0;
    Timeline theta;
    Timeline u;
    Timeline pi;
    std::map<std::string, double> norm_ledger;
    double delta_U = std::numeric_limits<double>::infinity();         // undamped, the stopping quantity
    double delta_U_damped = std::numeric_limits<double>::infinity();  // lambda-damped, the contraction object
};

struct ConvergenceHistory {
    std::vector<double> delta_us;             // undamped delta U_n
    std::vector<double> delta_us_damped;      // lambda_eff-damped delta U_{n,lambda}
    std::vector<double> ratios;               // damped delta U_{n+1} / delta U_n
    std::vector<double> inner_iterations;
    std::vector<double> inner_last_factor;    // damped Y_r contraction factor
    std::vector<double> theta_overshoot;      // sup_t ||theta||_inf / ||theta0||_inf - 1
    std::vector<double> div_rel;              // ||div u||_2 / ||grad u||_2
    std::vector<double> gronwall_l4eps;       // ||delta U_n(.)||_{L^{4/eps}(0,T)}
    std::vector<double> gronwall_l2eps;       // ||delta U_n(.)||_{L^{2/eps}(0,T)}
    std::vector<double> lambda_eff;           // per-iteration effective lambda
    double lambda = 0.0;
    double lambda_H = 0.0;  // lambda * H(T), underflow diagnostic
    bool lambda_clamped = false;
    int iterations = 0;
    bool converged = false;
    std::string status = "running";  // converged | max_iterations | diverged
};

struct PicardResult {
    SolverState final_state;
    SolverState previous_state;
    std::vector<std::map<std::string, double>> iteration_ledgers;
    ConvergenceHistory history;
    SmallnessReport smallness;
    SolverExponents exponents;
};

// ---------------------------------------------------------------------------
// transport step
// ---------------------------------------------------------------------------

namespace detail {

inline double max_speed(const SpectralField& u) {
    return lp_norm(u, std::numeric_limits<double>::infinity());
}

/// -div(theta u) with dealiased product; u given spectrally.
inline SpectralField advection_rhs(const SpectralField& theta, const SpectralField& u) {
    const SpectralField flux = multiply(theta, u);  // scalar * vector broadcast
    return -1.0 * divergence(flux);
}

}  // namespace detail

/// Advance theta on the time grid of u: diffusion exactly via the e^{eps L dt}
/// multiplier, advection explicit (integrating-factor RK4) with CFL
/// sub-stepping so max|u| dt <= cfl (L/N). u is interpolated linearly in time.
inline Timeline transport_step(const SpectralField& theta_init, const Timeline& u, double eps,
                               const SolverConfig& cfg = SolverConfig{}) {
    if (eps < 0.0) throw std::invalid_argument("transport_step: eps must be >= 0");
    u.validate();
    const Grid& g = theta_init.grid;

    Timeline out;
    out.times = u.times;
    out.snapshots.reserve(u.nodes());
    out.snapshots.push_back(theta_init);

    long total_substeps = 0;
    SpectralField theta = theta_init;
    for (std::size_t j = 0; j + 1 < u.nodes(); ++j) {
        const double t0 = u.times[j], t1 = u.times[j + 1];
        const double dt_full = t1 - t0;
        const double umax = std::max(detail::max_speed(u.snapshots[j]), detail::max_speed(u.snapshots[j + 1]));
        const double dx = g.length / g.n;
        long nsub = 1;
        if (umax > 0.0) {
            const double dt_cfl = cfg.cfl * dx / umax;
            nsub = static_cast<long>(std::ceil(dt_full / dt_cfl));
            nsub = std::max<long>(nsub, 1);
        }
        total_substeps += nsub;
        if (total_substeps > cfg.max_substeps)
            throw std::runtime_error("transport_step: CFL sub-step budget exhausted");

        const double h = dt_full / static_cast<double>(nsub);
        auto u_at = [&](double t) { return u.interpolate(std::min(t, u.times.back())); };
        auto E = [&](const SpectralField& f, double dt) { return eps > 0.0 ? heat_propagate(f, eps * dt) : f; };

        double t = t0;
        for (long s = 0; s < nsub; ++s) {
            // integrating-factor RK4; diffusion multiplier exact
            const SpectralField u_a = u_at(t);
            const SpectralField u_b = u_at(t + 0.5 * h);
            const SpectralField u_c = u_at(t + h);

            const SpectralField k1 = detail::advection_rhs(theta, u_a);
            const SpectralField th_a = E(theta + (0.5 * h) * k1, 0.5 * h);
            const SpectralField k2 = detail::advection_rhs(th_a, u_b);
            const SpectralField th_b = E(theta, 0.5 * h) + (0.5 * h) * k2;
            const SpectralField k3 = detail::advection_rhs(th_b, u_b);
            const SpectralField th_c = E(theta, h) + h * E(k3, 0.5 * h);
            const SpectralField k4 = detail::advection_rhs(th_c, u_c);

            theta = E(theta, h) + (h / 6.0) * (E(k1, h) + 2.0 * E(k2 + k3, 0.5 * h) + k4);
            t += h;
        }
        if (!theta.finite()) throw std::runtime_error("transport_step: non-finite temperature");
        out.snapshots.push_back(theta);
    }
    return out;
}

// ---------------------------------------------------------------------------
// the linear Stokes solve with the coupled forcing
// ---------------------------------------------------------------------------

namespace detail {

/// g per the approximate system: rows built from the previous iterate u_prev
/// and the coupled candidate w (the horizontal components of the NEW
/// velocity enter g itself).
inline SpectralField coupling_forcing(const SpectralField& u_prev, const SpectralField& w) {
    const Grid& g = u_prev.grid;
    const int d = g.dim;
    const SpectralField ud_prev = u_prev.component(d - 1);
    SpectralField out(g, d);

    for (int i = 0; i < d - 1; ++i) {
        // u_prev^d d_d w^h_i + u_prev^h . grad_h u_prev^h_i
        SpectralField gi = multiply(ud_prev, derivative(w.component(i), d - 1));
        for (int j = 0; j < d - 1; ++j)
            gi += multiply(u_prev.component(j), derivative(u_prev.component(i), j));
        out.set_component(i, -1.0 * gi);
    }
    // grad_h u_prev^d . w^h - u_prev^d div_h w^h
    SpectralField gd(g, 1);
    SpectralField divh_w(g, 1);
    for (int j = 0; j < d - 1; ++j) {
        gd += multiply(derivative(ud_prev, j), w.component(j));
        divh_w += derivative(w.component(j), j);
    }
    gd -= multiply(ud_prev, divh_w);
    out.set_component(d - 1, -1.0 * gd);
    return out;
}

/// div{ (nu(theta) - 1) M } with M = grad u + grad u^T, one node.
inline SpectralField viscous_forcing(const SpectralField& visc_dev_hat, const SpectralField& u_prev) {
    const Grid& g = u_prev.grid;
    const int d = g.dim;
    const SpectralField jac = jacobian(u_prev);  // (i*d + j) = d_i u_j
    SpectralField out(g, d);
    for (int i = 0; i < d; ++i) {
        SpectralField div_i(g, 1);
        for (int j = 0; j < d; ++j) {
            const SpectralField m_ij = jac.component(i * d + j) + jac.component(j * d + i);
            div_i += derivative(multiply(visc_dev_hat, m_ij), j);
        }
        out.set_component(i, div_i);
    }
    return out;
}

}  // namespace detail

struct StokesResult {
    Timeline u;
    Timeline pi;
    Timeline g;  // the final coupling forcing, needed for pressure recovery
    int inner_iterations = 0;
    double last_contraction = 0.0;
    bool inner_converged = false;
};

/// Solve the linear momentum system of one Picard sweep in mild form:
///   u_new = e^{tL} u0 + C( P[g(u_new) + div{(nu(theta)-1) M(u_prev)}] ),
/// the coupling in g resolved by a damped fixed point in the Y_r norm.
inline StokesResult linear_stokes_solve(const Timeline& u_prev, const Timeline& theta_new,
                                        const InitialData& data, const ViscosityLaw& law, double lambda,
                                        const SolverConfig& cfg, const SolverExponents& ex) {
    u_prev.validate();
    theta_new.validate();
    const Grid& g = data.u0.grid;
    const int d = g.dim;
    const std::size_t nodes = u_prev.nodes();

    // heat flow of the initial velocity
    Timeline heat_u;
    heat_u.times = u_prev.times;
    heat_u.snapshots.reserve(nodes);
    for (std::size_t i = 0; i < nodes; ++i) heat_u.snapshots.push_back(heat_propagate(data.u0, u_prev.times[i]));

    // viscous forcing does not involve the new velocity: precompute
    Timeline visc_force;
    visc_force.times = u_prev.times;
    visc_force.snapshots.reserve(nodes);
    const bool visc_active = law.kind != ViscosityLaw::Kind::constant || law.delta != 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        if (!visc_active) {
            visc_force.snapshots.push_back(zero_field(g, d));
            continue;
        }
        const SpectralField dev = to_spectral(viscosity_deviation(law, to_physical(theta_new.snapshots[i])));
        visc_force.snapshots.push_back(detail::viscous_forcing(dev, u_prev.snapshots[i]));
    }

    // damped Y_r metric for the inner loop
    const DampingWeight damp = vertical_damping_weight(u_prev, lambda, ex);
    const double q_u = ex.fam1.q_u, q_gu = ex.fam1.q_gu;
    auto y_norm = [&](const Timeline& v) {
        const Timeline vl = damp_timeline(v, damp);
        return spacetime_norm(vl, SpaceTimeNormSpec{2.0 * ex.r, q_u, 0.0}) +
               spacetime_norm(timeline_gradient(vl), SpaceTimeNormSpec{2.0 * ex.r, q_gu, 0.0});
    };

    StokesResult res;
    Timeline w = u_prev;  // warm start
    Timeline g_final;
    double prev_update = -1.0;
    for (int it = 0; it < cfg.max_inner; ++it) {
        Timeline rhs;
        rhs.times = u_prev.times;
        rhs.snapshots.reserve(nodes);
        Timeline g_cur;
        g_cur.times = u_prev.times;
        g_cur.snapshots.reserve(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            SpectralField gi = detail::coupling_forcing(u_prev.snapshots[i], w.snapshots[i]);
            g_cur.snapshots.push_back(gi);
            gi += visc_force.snapshots[i];
            rhs.snapshots.push_back(leray_project(gi));
        }
        Timeline w_next = duhamel_C_all(rhs);
        for (std::size_t i = 0; i < nodes; ++i) w_next.snapshots[i] += heat_u.snapshots[i];
        if (!w_next.snapshots.back().finite()) throw std::runtime_error("linear_stokes_solve: non-finite velocity");

        const double update = y_norm(timeline_difference(w_next, w));
        const double scale = std::max(y_norm(w_next), 1e-300);
        res.inner_iterations = it + 1;
        if (prev_update > 0.0) res.last_contraction = update / prev_update;
        prev_update = update;
        w = std::move(w_next);
        g_final = std::move(g_cur);
        if (update / scale < cfg.tol_inner) {
            res.inner_converged = true;
            break;
        }
    }
    if (!res.inner_converged && res.last_contraction >= 0.99)
        throw std::runtime_error("linear_stokes_solve: inner loop stagnation, last contraction factor " +
                                 std::to_string(res.last_contraction));

    res.u = std::move(w);
    res.g = std::move(g_final);

    // pressure per the recovery formula, from the final coupling forcing and
    // the previous iterate's gradient
    res.pi.times = u_prev.times;
    res.pi.snapshots.reserve(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        const SpectralField& gi = res.g.snapshots[i];
        SpectralField r_dot_g(g, 1);
        for (int j = 0; j < d; ++j) r_dot_g += riesz_transform(gi.component(j), j);
        SpectralField pi_node = -1.0 * riesz_potential(r_dot_g);
        if (visc_active) {
            const SpectralField dev = to_spectral(viscosity_deviation(law, to_physical(theta_new.snapshots[i])));
            const SpectralField jac = jacobian(u_prev.snapshots[i]);
            SpectralField rr(g, 1);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    rr += riesz_transform(riesz_transform(multiply(dev, jac.component(a * d + b)), a), b);
            pi_node -= rr;
        }
        res.pi.snapshots.push_back(std::move(pi_node));
    }
    return res;
}

/// Pressure recovery as a standalone operation (used by tests and tools):
/// pi = -(-L)^{-1/2} R.g - R.R.{(nu(theta)-1) grad u_prev}.
inline Timeline recover_pressure(const Timeline& g_force, const Timeline& theta, const Timeline& u_prev,
                                 const ViscosityLaw& law) {
    const Grid& grid = g_force.snapshots[0].grid;
    const int d = grid.dim;
    Timeline out;
    out.times = g_force.times;
    out.snapshots.reserve(g_force.nodes());
    for (std::size_t i = 0; i < g_force.nodes(); ++i) {
        SpectralField r_dot_g(grid, 1);
        for (int j = 0; j < d; ++j) r_dot_g += riesz_transform(g_force.snapshots[i].component(j), j);
        SpectralField pi_node = -1.0 * riesz_potential(r_dot_g);
        const SpectralField dev = to_spectral(viscosity_deviation(law, to_physical(theta.snapshots[i])));
        const SpectralField jac = jacobian(u_prev.snapshots[i]);
        SpectralField rr(grid, 1);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                rr += riesz_transform(riesz_transform(multiply(dev, jac.component(a * d + b)), a), b);
        pi_node -= rr;
        out.snapshots.push_back(std::move(pi_node));
    }
    return out;
}

// ---------------------------------------------------------------------------
// the outer Picard iteration
// ---------------------------------------------------------------------------

namespace detail {

inline double sup_over_nodes_inf_norm(const Timeline& f) {
    double m = 0.0;
    for (const auto& s : f.snapshots) m = std::max(m, lp_norm(s, std::numeric_limits<double>::infinity()));
    return m;
}

inline double divergence_rel(const Timeline& u) {
    double worst = 0.0;
    for (const auto& s : u.snapshots) {
        const double gu = lp_norm(jacobian(s), 2.0);
        if (gu > 0.0) worst = std::max(worst, lp_norm(divergence(s), 2.0) / gu);
    }
    return worst;
}

/// Truncate a timeline to the window [0, t_k] (node prefix).
inline Timeline prefix(const Timeline& f, std::size_t k) {
    Timeline out;
    out.times.assign(f.times.begin(), f.times.begin() + k + 1);
    out.snapshots.assign(f.snapshots.begin(), f.snapshots.begin() + k + 1);
    return out;
}

}  // namespace detail

/// lambda per the absorption recipe with surrogate constants.
inline double lambda_recipe(const SolverConfig& cfg, const InitialData& data) {
    return std::pow(4.0 * cfg.c_surr, 4.0 * cfg.r) *
           std::pow(cfg.c2_surr * data.ud_besov + cfg.c3_surr, 2.0 * cfg.r);
}

/// Outer Picard iteration from (theta, u, pi) = (0, 0, 0). Divergence is a
/// result, not an error: the history carries the status.
inline PicardResult picard_solve(const InitialData& data, const ViscosityLaw& law, const SolverConfig& cfg) {
    const Grid& g = data.u0.grid;
    const int d = g.dim;
    const SolverExponents ex = make_solver_exponents(d, cfg.p, cfg.r, cfg.regime, cfg.eps_reg);

    PicardResult result;
    result.exponents = ex;
    result.smallness = eta_report(data, law, cfg.p, cfg.r, cfg.regime, cfg.c_r, cfg.c0);
    // smallness is a predictor, not a gate: proceed either way

    const std::vector<double> times = graded_times(cfg.horizon, cfg.time_nodes, cfg.grading);
    const double lambda = cfg.lambda >= 0.0 ? cfg.lambda : lambda_recipe(cfg, data);
    result.history.lambda = lambda;

    SolverState prev;
    prev.iterate = 0;
    prev.theta = constant_timeline(times, zero_field(g, 1));
    prev.u = constant_timeline(times, zero_field(g, d));
    prev.pi = constant_timeline(times, zero_field(g, 1));

    auto& hist = result.history;
    try {
        for (int n = 0; n < cfg.max_outer; ++n) {
            // clamp the effective lambda so exp(-lambda H) never underflows
            // to an exact zero (which would fake delta_U = 0 on large data)
            const double H_prev = vertical_damping_weight(prev.u, 0.0, ex).total();
            const double lambda_eff = H_prev > 0.0 ? std::min(lambda, 300.0 / H_prev) : lambda;
            if (lambda_eff < lambda) hist.lambda_clamped = true;
            hist.lambda_eff.push_back(lambda_eff);

            SolverState next;
            next.iterate = n + 1;
            next.theta = transport_step(data.theta0_hat, prev.u, cfg.eps, cfg);
            StokesResult stokes = linear_stokes_solve(prev.u, next.theta, data, law, lambda_eff, cfg, ex);
            next.u = std::move(stokes.u);
            next.pi = std::move(stokes.pi);

            next.delta_U = delta_u(prev.u, next.u, 0.0, ex);
            next.delta_U_damped = delta_u(prev.u, next.u, lambda_eff, ex);
            hist.delta_us.push_back(next.delta_U);
            hist.delta_us_damped.push_back(next.delta_U_damped);
            if (hist.delta_us_damped.size() >= 2) {
                const double prev_du = hist.delta_us_damped[hist.delta_us_damped.size() - 2];
                hist.ratios.push_back(prev_du > 0.0 ? next.delta_U_damped / prev_du : 0.0);
            }
            hist.inner_iterations.push_back(stokes.inner_iterations);
            hist.inner_last_factor.push_back(stokes.last_contraction);

            const double theta_sup = detail::sup_over_nodes_inf_norm(next.theta);
            hist.theta_overshoot.push_back(data.theta_sup > 0.0 ? theta_sup / data.theta_sup - 1.0 : 0.0);
            hist.div_rel.push_back(detail::divergence_rel(next.u));

            // Gronwall-side monitor: delta U as a function of its horizon,
            // in both L^{4/eps} and L^{2/eps} (sup when eps = 0)
            if (cfg.gronwall_monitor && n >= 1) {
                std::vector<double> ts, vals;
                const std::size_t stride = std::max<std::size_t>(1, (times.size() - 1) / 8);
                for (std::size_t k = stride; k < times.size(); k += stride) {
                    ts.push_back(times[k]);
                    vals.push_back(delta_u(detail::prefix(prev.u, k), detail::prefix(next.u, k), lambda_eff, ex));
                }
                const double inf = std::numeric_limits<double>::infinity();
                const double rho4 = cfg.eps > 0.0 ? 4.0 / cfg.eps : inf;
                const double rho2 = cfg.eps > 0.0 ? 2.0 / cfg.eps : inf;
                hist.gronwall_l4eps.push_back(spacetime_norm_scalar(ts, vals, rho4));
                hist.gronwall_l2eps.push_back(spacetime_norm_scalar(ts, vals, rho2));
            }

            // per-iteration norm ledger
            next.norm_ledger["delta_U"] = next.delta_U;
            next.norm_ledger["delta_U_damped"] = next.delta_U_damped;
            next.norm_ledger["lambda_eff"] = lambda_eff;
            next.norm_ledger["theta_sup"] = theta_sup;
            next.norm_ledger["div_rel"] = hist.div_rel.back();
            next.norm_ledger["inner_iterations"] = stokes.inner_iterations;
            next.norm_ledger["inner_last_factor"] = stokes.last_contraction;
            {
                const Timeline uh = timeline_horizontal(next.u);
                const Timeline ud = timeline_vertical(next.u);
                next.norm_ledger["uh_L2r_Lqu"] = spacetime_norm(uh, SpaceTimeNormSpec{2.0 * ex.r, ex.fam1.q_u, 0.0});
                next.norm_ledger["ud_L2r_Lqu"] = spacetime_norm(ud, SpaceTimeNormSpec{2.0 * ex.r, ex.fam1.q_u, 0.0});
            }
            result.iteration_ledgers.push_back(next.norm_ledger);

            const bool done = next.delta_U < cfg.tol_outer;
            result.previous_state = std::move(prev);
            prev = std::move(next);
            hist.iterations = n + 1;
            if (done) {
                hist.converged = true;
                hist.status = "converged";
                break;
            }
            if (!std::isfinite(prev.delta_U)) {
                hist.status = "diverged";
                break;
            }
        }
    } catch (const std::runtime_error& e) {
        hist.status = std::string("diverged: ") + e.what();
    }
    if (hist.status == "running") hist.status = "max_iterations";

    const DampingWeight w_final = vertical_damping_weight(prev.u, lambda, ex);
    hist.lambda_H = lambda * w_final.total();

    result.final_state = std::move(prev);
    return result;
}

// ---------------------------------------------------------------------------
// epsilon sweep
// ---------------------------------------------------------------------------

struct EpsilonSweepReport {
    std::vector<double> eps_values;
    std::vector<std::string> statuses;
    std::vector<double> u_differences;      // ||u_{eps_i} - u_{eps_{i+1}}||_{L^{2r} L^{q_u}}
    std::vector<double> theta_differences;  // sup_t ||theta_i - theta_{i+1}||_{L^2}
    std::vector<PicardResult> runs;
};

/// Picard solve per epsilon (non-increasing list) and successive-difference
/// norms exhibiting Cauchy behavior as eps -> 0.
inline EpsilonSweepReport epsilon_sweep(const InitialData& data, const ViscosityLaw& law, SolverConfig cfg,
                                        const std::vector<double>& eps_list) {
    if (eps_list.empty()) throw std::invalid_argument("epsilon_sweep: empty eps list");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (eps_list[i] > eps_list[i - 1] + 1e-15)
            throw std::invalid_argument("epsilon_sweep: eps list must be non-increasing");

    EpsilonSweepReport rep;
    rep.eps_values = eps_list;
    for (double e : eps_list) {
        cfg.eps = e;
        rep.runs.push_back(picard_solve(data, law, cfg));
        rep.statuses.push_back(rep.runs.back().history.status);
    }
    const SolverExponents& ex = rep.runs.front().exponents;
    for (std::size_t i = 0; i + 1 < rep.runs.size(); ++i) {
        const Timeline& ua = rep.runs[i].final_state.u;
        const Timeline& ub = rep.runs[i + 1].final_state.u;
        rep.u_differences.push_back(
            spacetime_norm(timeline_difference(ua, ub), SpaceTimeNormSpec{2.0 * ex.r, ex.fam1.q_u, 0.0}));
        const Timeline& ta = rep.runs[i].final_state.theta;
        const Timeline& tb = rep.runs[i + 1].final_state.theta;
        double worst = 0.0;
        for (std::size_t k = 0; k < ta.nodes(); ++k)
            worst = std::max(worst, lp_norm(ta.snapshots[k] - tb.snapshots[k], 2.0));
        rep.theta_differences.push_back(worst);
    }
    return rep;
}

}  // namespace vvb
