#pragma once

// Run configuration: versioned JSON schema, strict key checking (unknown
// keys are errors), and total validation with every violated inequality
// reported alongside both of its sides.

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "vvb/data_prep.hpp"
#include "vvb/io.hpp"
#include "vvb/solver.hpp"

namespace vvb {

struct RunConfig {
    int schema = 1;
    // grid
    int dim = 2;
    int n = 64;
    double length = 2.0 * M_PI;
    // time
    SolverConfig solver;
    // data
    std::string theta_kind = "interface-temperature";  // interface-temperature | blob | file
    double theta_amplitude = 1.0;
    std::string u_kind = "shear";  // shear | random-band-limited | single-mode | file
    double vertical_amp = 0.5;
    double horizontal_amp = 0.02;
    int trunc_level = 4;
    std::string theta_file;
    std::string u_file;
    // viscosity
    std::string viscosity_kind = "tanh";  // constant | tanh | table
    double viscosity_delta = 0.02;
    std::vector<std::pair<double, double>> viscosity_knots;
    // run management
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    bool quiet = false;
    // sweep inputs
    std::vector<double> sweep_eps;
    std::vector<double> sweep_scales;
};

namespace detail {

inline void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where,
                       std::vector<std::string>& errors) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) errors.push_back("unknown key '" + it.key() + "' in " + where);
}

}  // namespace detail

/// Parse without validating; structural errors (bad types, unknown keys) are
/// collected into `errors`.
inline RunConfig parse_config(const nlohmann::json& j, std::vector<std::string>& errors) {
    RunConfig cfg;
    detail::check_keys(j,
                       {"schema", "grid", "time", "data", "viscosity", "exponents", "epsilon", "lambda", "c_r",
                        "c0", "lambda_surrogates", "tolerances", "eps_reg", "seed", "out", "sweep"},
                       "config root", errors);
    try {
        cfg.schema = j.value("schema", 0);
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            detail::check_keys(g, {"dim", "n", "length"}, "grid", errors);
            cfg.dim = g.value("dim", cfg.dim);
            cfg.n = g.value("n", cfg.n);
            cfg.length = g.value("length", cfg.length);
        }
        if (j.contains("time")) {
            const auto& t = j.at("time");
            detail::check_keys(t, {"horizon", "nodes", "grading"}, "time", errors);
            cfg.solver.horizon = t.value("horizon", cfg.solver.horizon);
            cfg.solver.time_nodes = t.value("nodes", cfg.solver.time_nodes);
            cfg.solver.grading = t.value("grading", cfg.solver.grading);
        }
        if (j.contains("data")) {
            const auto& d = j.at("data");
            detail::check_keys(d,
                               {"theta_kind", "theta_amplitude", "u_kind", "vertical_amp", "horizontal_amp",
                                "trunc_level", "theta_file", "u_file"},
                               "data", errors);
            cfg.theta_kind = d.value("theta_kind", cfg.theta_kind);
            cfg.theta_amplitude = d.value("theta_amplitude", cfg.theta_amplitude);
            cfg.u_kind = d.value("u_kind", cfg.u_kind);
            cfg.vertical_amp = d.value("vertical_amp", cfg.vertical_amp);
            cfg.horizontal_amp = d.value("horizontal_amp", cfg.horizontal_amp);
            cfg.trunc_level = d.value("trunc_level", cfg.trunc_level);
            cfg.theta_file = d.value("theta_file", cfg.theta_file);
            cfg.u_file = d.value("u_file", cfg.u_file);
        }
        if (j.contains("viscosity")) {
            const auto& v = j.at("viscosity");
            detail::check_keys(v, {"kind", "delta", "knots"}, "viscosity", errors);
            cfg.viscosity_kind = v.value("kind", cfg.viscosity_kind);
            cfg.viscosity_delta = v.value("delta", cfg.viscosity_delta);
            if (v.contains("knots"))
                for (const auto& kv : v.at("knots"))
                    cfg.viscosity_knots.emplace_back(kv.at(0).get<double>(), kv.at(1).get<double>());
        }
        if (j.contains("exponents")) {
            const auto& e = j.at("exponents");
            detail::check_keys(e, {"p", "r", "regime"}, "exponents", errors);
            cfg.solver.p = e.value("p", cfg.solver.p);
            cfg.solver.r = e.value("r", cfg.solver.r);
            const std::string reg = e.value("regime", std::string("theorem1"));
            if (reg == "theorem1")
                cfg.solver.regime = Regime::theorem1;
            else if (reg == "theorem2")
                cfg.solver.regime = Regime::theorem2;
            else
                errors.push_back("exponents.regime must be theorem1 or theorem2, got '" + reg + "'");
        }
        cfg.solver.eps = j.value("epsilon", cfg.solver.eps);
        cfg.solver.lambda = j.value("lambda", cfg.solver.lambda);
        cfg.solver.c_r = j.value("c_r", cfg.solver.c_r);
        cfg.solver.c0 = j.value("c0", cfg.solver.c0);
        if (j.contains("lambda_surrogates")) {
            const auto& s = j.at("lambda_surrogates");
            detail::check_keys(s, {"c", "c2", "c3"}, "lambda_surrogates", errors);
            cfg.solver.c_surr = s.value("c", cfg.solver.c_surr);
            cfg.solver.c2_surr = s.value("c2", cfg.solver.c2_surr);
            cfg.solver.c3_surr = s.value("c3", cfg.solver.c3_surr);
        }
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            detail::check_keys(t, {"outer", "inner", "max_outer", "max_inner", "cfl", "max_substeps"},
                               "tolerances", errors);
            cfg.solver.tol_outer = t.value("outer", cfg.solver.tol_outer);
            cfg.solver.tol_inner = t.value("inner", cfg.solver.tol_inner);
            cfg.solver.max_outer = t.value("max_outer", cfg.solver.max_outer);
            cfg.solver.max_inner = t.value("max_inner", cfg.solver.max_inner);
            cfg.solver.cfl = t.value("cfl", cfg.solver.cfl);
            cfg.solver.max_substeps = t.value("max_substeps", cfg.solver.max_substeps);
        }
        cfg.solver.eps_reg = j.value("eps_reg", cfg.solver.eps_reg);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.out_dir = j.value("out", cfg.out_dir);
        if (j.contains("sweep")) {
            const auto& s = j.at("sweep");
            detail::check_keys(s, {"eps_list", "scale_list"}, "sweep", errors);
            if (s.contains("eps_list")) cfg.sweep_eps = s.at("eps_list").get<std::vector<double>>();
            if (s.contains("scale_list")) cfg.sweep_scales = s.at("scale_list").get<std::vector<double>>();
        }
    } catch (const nlohmann::json::exception& e) {
        errors.push_back(std::string("json error: ") + e.what());
    }
    return cfg;
}

/// Full validation: every violated constraint is listed with both sides
/// evaluated; nothing short-circuits.
inline std::vector<std::string> validate_config(const RunConfig& cfg) {
    std::vector<std::string> errors;
    if (cfg.schema != 1) errors.push_back("schema: expected 1, got " + std::to_string(cfg.schema));
    if (cfg.dim != 2 && cfg.dim != 3) errors.push_back("grid.dim: must be 2 or 3, got " + std::to_string(cfg.dim));
    if (cfg.n < 8 || !is_power_of_two(cfg.n))
        errors.push_back("grid.n: must be a power of two >= 8, got " + std::to_string(cfg.n));
    if (!(cfg.length > 0.0)) errors.push_back("grid.length: must be positive");
    if (cfg.solver.time_nodes < 2) errors.push_back("time.nodes: need at least 2");
    if (cfg.solver.grading < 2.0) errors.push_back("time.grading: must be >= 2 (grading invariant t1 <= T/M^2)");
    if (!(cfg.solver.horizon > 0.0)) errors.push_back("time.horizon: must be positive");

    for (const auto& v : regime_violations(cfg.solver.regime, cfg.dim, cfg.solver.p, cfg.solver.r))
        errors.push_back(std::string(regime_name(cfg.solver.regime)) + " admissibility: " + v);

    if (cfg.solver.eps < 0.0) errors.push_back("epsilon: must be >= 0");
    if (cfg.solver.eps_reg >= 0.0) {
        const double cap = eps_reg_cap(cfg.dim, cfg.solver.p, cfg.solver.r);
        if (cfg.solver.eps_reg > std::max(cap, 0.0))
            errors.push_back("eps_reg: " + format_double(cfg.solver.eps_reg) + " exceeds cap " +
                             format_double(std::max(cap, 0.0)));
    }
    if (cfg.viscosity_kind == "tanh" && !(std::abs(cfg.viscosity_delta) < 1.0))
        errors.push_back("viscosity.delta: |delta| < 1 required for tanh, got " +
                         format_double(cfg.viscosity_delta));
    if (cfg.viscosity_kind != "constant" && cfg.viscosity_kind != "tanh" && cfg.viscosity_kind != "table")
        errors.push_back("viscosity.kind: unknown '" + cfg.viscosity_kind + "'");

    const std::set<std::string> theta_kinds{"interface-temperature", "blob", "file"};
    if (!theta_kinds.count(cfg.theta_kind)) errors.push_back("data.theta_kind: unknown '" + cfg.theta_kind + "'");
    const std::set<std::string> u_kinds{"shear", "random-band-limited", "single-mode", "file"};
    if (!u_kinds.count(cfg.u_kind)) errors.push_back("data.u_kind: unknown '" + cfg.u_kind + "'");

    for (std::size_t i = 1; i < cfg.sweep_eps.size(); ++i)
        if (cfg.sweep_eps[i] > cfg.sweep_eps[i - 1])
            errors.push_back("sweep.eps_list: must be non-increasing");
    return errors;
}

inline RunConfig load_config(const std::string& path, std::vector<std::string>& errors) {
    std::ifstream is(path);
    if (!is) {
        errors.push_back("cannot open config file " + path);
        return RunConfig{};
    }
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        errors.push_back(std::string("config parse error: ") + e.what());
        return RunConfig{};
    }
    RunConfig cfg = parse_config(j, errors);
    const auto ve = validate_config(cfg);
    errors.insert(errors.end(), ve.begin(), ve.end());
    return cfg;
}

// ---------------------------------------------------------------------------
// realizing a config: build the grid, data, and viscosity law
// ---------------------------------------------------------------------------

inline ViscosityLaw make_viscosity(const RunConfig& cfg) {
    if (cfg.viscosity_kind == "constant") return constant_viscosity();
    if (cfg.viscosity_kind == "tanh") return tanh_viscosity(cfg.viscosity_delta);
    return table_viscosity(cfg.viscosity_knots);
}

inline InitialData make_data(const RunConfig& cfg) {
    const Grid g = make_grid(cfg.dim, cfg.n, cfg.length);

    PhysicalField theta_raw;
    if (cfg.theta_kind == "interface-temperature")
        theta_raw = interface_temperature(g, cfg.theta_amplitude);
    else if (cfg.theta_kind == "blob")
        theta_raw = blob_temperature(g, cfg.theta_amplitude);
    else
        theta_raw = read_field(cfg.theta_file);

    SpectralField u_raw;
    if (cfg.u_kind == "shear")
        u_raw = shear_velocity(g, cfg.vertical_amp, cfg.horizontal_amp, cfg.seed);
    else if (cfg.u_kind == "random-band-limited")
        u_raw = cfg.vertical_amp * random_divergence_free(g, 4, cfg.seed);
    else if (cfg.u_kind == "single-mode") {
        SpectralField m(g, g.dim);
        m.set_component(0, single_mode_sin(g, {0, 1, 0}, cfg.vertical_amp));
        u_raw = leray_project(m);
    } else {
        u_raw = to_spectral(read_field(cfg.u_file));
    }
    return prepare_data(theta_raw, u_raw, cfg.trunc_level, cfg.solver.p, cfg.solver.r);
}

/// The run manifest: resolved configuration echoed to JSON.
inline nlohmann::json manifest_json(const RunConfig& cfg, const InitialData& data, double lambda_resolved) {
    nlohmann::json j;
    j["schema"] = cfg.schema;
    j["grid"] = {{"dim", cfg.dim}, {"n", cfg.n}, {"length", cfg.length}};
    j["time"] = {{"horizon", cfg.solver.horizon}, {"nodes", cfg.solver.time_nodes}, {"grading", cfg.solver.grading}};
    j["data"] = {{"theta_kind", cfg.theta_kind},
                 {"u_kind", cfg.u_kind},
                 {"trunc_level", cfg.trunc_level},
                 {"uh_besov", data.uh_besov},
                 {"ud_besov", data.ud_besov},
                 {"theta_sup", data.theta_sup},
                 {"gibbs_overshoot", data.gibbs_overshoot()}};
    j["viscosity"] = {{"kind", cfg.viscosity_kind}, {"delta", cfg.viscosity_delta}};
    j["exponents"] = {{"p", cfg.solver.p},
                      {"r", cfg.solver.r},
                      {"regime", regime_name(cfg.solver.regime)},
                      {"p1_read_as_p", true}};
    j["epsilon"] = cfg.solver.eps;
    j["lambda"] = lambda_resolved;
    j["c_r"] = cfg.solver.c_r;
    j["c0"] = cfg.solver.c0;
    j["eps_reg"] = cfg.solver.eps_reg;
    j["seed"] = cfg.seed;
    j["dyadic_bump"] = "plateau(rho): 1 on [0,3/4], exp-spline transition, 0 on [4/3,inf)";
    return j;
}

}  // namespace vvb
