// Command-line front end: simulate / verify-ops / besov / sweep / report.
// Exit codes: 0 success (a diverged run with its report is a result),
// 1 config validation failure, 2 numerical invariant violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "vvb/config.hpp"
#include "vvb/io.hpp"
#include "vvb/probes.hpp"
#include "vvb/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    bool has_seed_override = false;
    bool quiet = false;
};

int load_or_fail(const CliOptions& opt, vvb::RunConfig& cfg) {
    std::vector<std::string> errors;
    if (opt.config_path.empty()) {
        // default desk-scale configuration
        cfg = vvb::RunConfig{};
        const auto ve = vvb::validate_config(cfg);
        errors.insert(errors.end(), ve.begin(), ve.end());
    } else {
        cfg = vvb::load_config(opt.config_path, errors);
    }
    if (opt.has_seed_override) cfg.seed = opt.seed_override;
    if (!opt.out_override.empty()) cfg.out_dir = opt.out_override;
    cfg.quiet = opt.quiet;
    if (!errors.empty()) {
        for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
        return 1;
    }
    return 0;
}

void info(const vvb::RunConfig& cfg, const std::string& msg) {
    if (!cfg.quiet) std::cout << msg << "\n";
}

json history_json(const vvb::ConvergenceHistory& h) {
    json j;
    j["status"] = h.status;
    j["converged"] = h.converged;
    j["iterations"] = h.iterations;
    j["lambda"] = h.lambda;
    j["lambda_H"] = h.lambda_H;
    j["delta_us"] = h.delta_us;
    j["ratios"] = h.ratios;
    j["inner_iterations"] = h.inner_iterations;
    j["inner_last_factor"] = h.inner_last_factor;
    j["theta_overshoot"] = h.theta_overshoot;
    j["div_rel"] = h.div_rel;
    j["gronwall_l4eps"] = h.gronwall_l4eps;
    j["gronwall_l2eps"] = h.gronwall_l2eps;
    return j;
}

void append_cross_run_ledger(const fs::path& path, const std::string& run_id,
                             const std::vector<vvb::InequalityReport>& reports) {
    const bool fresh = !fs::exists(path);
    std::ofstream os(path, std::ios::app);
    if (fresh) os << "run_id,inequality,lhs,rhs_shape,inferred_C\n";
    for (const auto& rep : reports)
        os << run_id << "," << rep.name << "," << vvb::format_double(rep.lhs) << "," << rep.rhs_shape << ","
           << vvb::format_double(rep.inferred_c) << "\n";
}

/// Writes manifest, per-iteration ledger, history, reports, and final fields.
int emit_run_outputs(const vvb::RunConfig& cfg, const vvb::InitialData& data, const vvb::PicardResult& res,
                     const std::string& run_id) {
    const fs::path dir = fs::path(cfg.out_dir) / run_id;
    fs::create_directories(dir);

    std::ofstream(dir / "manifest.json") << vvb::manifest_json(cfg, data, res.history.lambda).dump(2) << "\n";
    std::ofstream(dir / "history.json") << history_json(res.history).dump(2) << "\n";

    vvb::CsvTable ledger;
    ledger.header = {"iterate", "delta_U", "theta_sup", "div_rel", "inner_iterations", "inner_last_factor",
                     "uh_L2r_Lqu", "ud_L2r_Lqu"};
    for (std::size_t i = 0; i < res.iteration_ledgers.size(); ++i) {
        const auto& m = res.iteration_ledgers[i];
        auto get = [&](const char* k) { return m.count(k) ? vvb::format_double(m.at(k)) : "0"; };
        ledger.add_row({std::to_string(i + 1), get("delta_U"), get("theta_sup"), get("div_rel"),
                        get("inner_iterations"), get("inner_last_factor"), get("uh_L2r_Lqu"), get("ud_L2r_Lqu")});
    }
    ledger.write((dir / "ledger.csv").string());

    const double theta_sup =
        res.iteration_ledgers.empty() ? 0.0 : res.iteration_ledgers.back().at("theta_sup");
    const auto reports = vvb::theorem_report(res.final_state.u, res.final_state.pi, theta_sup, data.theta_sup,
                                             res.smallness.eta, res.smallness.ud_besov, res.exponents,
                                             !res.history.converged);
    vvb::CsvTable rep_csv;
    rep_csv.header = {"inequality", "lhs", "rhs_shape", "inferred_C", "regime", "diverged"};
    for (const auto& rep : reports)
        rep_csv.add_row({rep.name, vvb::format_double(rep.lhs), rep.rhs_shape, vvb::format_double(rep.inferred_c),
                         vvb::regime_name(rep.regime), rep.diverged ? "1" : "0"});
    rep_csv.write((dir / "reports.csv").string());
    append_cross_run_ledger(fs::path(cfg.out_dir) / "ledger.csv", run_id, reports);

    vvb::write_field((dir / "theta_final.bin").string(), vvb::to_physical(res.final_state.theta.snapshots.back()));
    vvb::write_field((dir / "u_final.bin").string(), vvb::to_physical(res.final_state.u.snapshots.back()));
    vvb::write_field((dir / "pi_final.bin").string(), vvb::to_physical(res.final_state.pi.snapshots.back()));
    if (cfg.n <= 16)
        vvb::write_field_csv((dir / "u_final.csv").string(), vvb::to_physical(res.final_state.u.snapshots.back()));

    // invariant verdict: exit 2 on violations beyond the stated slack
    const double mp_slack = cfg.solver.eps > 0.0 ? 1e-6 : 1e-3;
    for (double ov : res.history.theta_overshoot)
        if (ov > mp_slack) {
            std::cerr << "invariant violation: maximum principle overshoot " << ov << " > " << mp_slack << "\n";
            return 2;
        }
    for (double dv : res.history.div_rel)
        if (dv > 1e-8) {
            std::cerr << "invariant violation: relative divergence " << dv << " > 1e-8\n";
            return 2;
        }
    return 0;
}

int cmd_simulate(const CliOptions& opt) {
    vvb::RunConfig cfg;
    if (int rc = load_or_fail(opt, cfg)) return rc;
    const vvb::InitialData data = vvb::make_data(cfg);
    const vvb::ViscosityLaw law = vvb::make_viscosity(cfg);
    const vvb::PicardResult res = vvb::picard_solve(data, law, cfg.solver);
    if (!res.smallness.satisfied)
        std::cerr << "warning: smallness condition not met (eta = " << vvb::format_double(res.smallness.eta)
                  << " > c0 = " << vvb::format_double(res.smallness.c0) << "); divergence is a data point\n";
    info(cfg, "simulate: status=" + res.history.status + " iterations=" + std::to_string(res.history.iterations) +
                  " eta=" + vvb::format_double(res.smallness.eta));
    return emit_run_outputs(cfg, data, res, "simulate-seed" + std::to_string(cfg.seed));
}

int cmd_verify_ops(const CliOptions& opt) {
    vvb::RunConfig cfg;
    if (int rc = load_or_fail(opt, cfg)) return rc;
    fs::create_directories(cfg.out_dir);
    const auto rows = vvb::run_verify_ops(cfg.seed);
    vvb::probe_rows_to_csv(rows).write((fs::path(cfg.out_dir) / "probes.csv").string());
    info(cfg, "verify-ops: " + std::to_string(rows.size()) + " probes written");
    return 0;
}

int cmd_besov(const CliOptions& opt) {
    vvb::RunConfig cfg;
    if (int rc = load_or_fail(opt, cfg)) return rc;
    fs::create_directories(cfg.out_dir);
    const auto rows = vvb::run_besov_corpus(cfg.seed, cfg.dim, cfg.n);
    vvb::besov_rows_to_csv(rows).write((fs::path(cfg.out_dir) / "besov.csv").string());
    double lo = 1e300, hi = 0.0;
    for (const auto& r : rows) {
        lo = std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
    }
    info(cfg, "besov: ratio range [" + vvb::format_double(lo) + ", " + vvb::format_double(hi) + "]");
    return (lo >= 0.1 && hi <= 10.0) ? 0 : 2;
}

int cmd_sweep(const CliOptions& opt) {
    vvb::RunConfig cfg;
    if (int rc = load_or_fail(opt, cfg)) return rc;
    fs::create_directories(cfg.out_dir);
    const vvb::ViscosityLaw law = vvb::make_viscosity(cfg);

    if (!cfg.sweep_eps.empty()) {
        const vvb::InitialData data = vvb::make_data(cfg);
        const vvb::EpsilonSweepReport rep = vvb::epsilon_sweep(data, law, cfg.solver, cfg.sweep_eps);
        vvb::CsvTable t;
        t.header = {"eps_high", "eps_low", "u_diff", "theta_diff", "status_high", "status_low"};
        for (std::size_t i = 0; i + 1 < rep.eps_values.size(); ++i)
            t.add_row({vvb::format_double(rep.eps_values[i]), vvb::format_double(rep.eps_values[i + 1]),
                       vvb::format_double(rep.u_differences[i]), vvb::format_double(rep.theta_differences[i]),
                       rep.statuses[i], rep.statuses[i + 1]});
        t.write((fs::path(cfg.out_dir) / "eps_sweep.csv").string());
        info(cfg, "sweep: " + std::to_string(rep.eps_values.size()) + " epsilon runs");
        return 0;
    }

    if (!cfg.sweep_scales.empty()) {
        // horizontal-data scale sweep: u0^h scaled, u0^d fixed
        vvb::CsvTable t;
        t.header = {"scale", "eta", "C1", "C4", "lhs_h", "lhs_d", "status"};
        for (double s : cfg.sweep_scales) {
            vvb::RunConfig scaled = cfg;
            scaled.horizontal_amp = cfg.horizontal_amp * s;
            scaled.viscosity_delta = cfg.viscosity_delta * s;
            const vvb::InitialData data = vvb::make_data(scaled);
            const vvb::PicardResult res = vvb::picard_solve(data, vvb::make_viscosity(scaled), scaled.solver);
            const auto reports = vvb::theorem_report(
                res.final_state.u, res.final_state.pi,
                res.iteration_ledgers.empty() ? 0.0 : res.iteration_ledgers.back().at("theta_sup"),
                data.theta_sup, res.smallness.eta, res.smallness.ud_besov, res.exponents,
                !res.history.converged);
            t.add_row({vvb::format_double(s), vvb::format_double(res.smallness.eta),
                       vvb::format_double(reports[0].inferred_c), vvb::format_double(reports[2].inferred_c),
                       vvb::format_double(reports[0].lhs), vvb::format_double(reports[1].lhs),
                       res.history.status});
        }
        t.write((fs::path(cfg.out_dir) / "scale_sweep.csv").string());
        info(cfg, "sweep: scale sweep complete");
        return 0;
    }

    std::cerr << "sweep: config must provide sweep.eps_list or sweep.scale_list\n";
    return 1;
}

int cmd_report(const CliOptions& opt) {
    vvb::RunConfig cfg;
    if (int rc = load_or_fail(opt, cfg)) return rc;
    const fs::path ledger = fs::path(cfg.out_dir) / "ledger.csv";
    if (!fs::exists(ledger)) {
        std::cerr << "report: no ledger at " << ledger << "\n";
        return 1;
    }
    // aggregate: min/max inferred constant per inequality
    std::ifstream is(ledger);
    std::string line;
    std::getline(is, line);  // header
    std::map<std::string, std::pair<double, double>> range;
    while (std::getline(is, line)) {
        std::stringstream ss(line);
        std::string run, ineq, lhs, shape, c;
        std::getline(ss, run, ',');
        std::getline(ss, ineq, ',');
        std::getline(ss, lhs, ',');
        std::getline(ss, shape, ',');
        std::getline(ss, c, ',');
        const double cv = std::stod(c);
        auto it = range.find(ineq);
        if (it == range.end())
            range[ineq] = {cv, cv};
        else {
            it->second.first = std::min(it->second.first, cv);
            it->second.second = std::max(it->second.second, cv);
        }
    }
    vvb::CsvTable t;
    t.header = {"inequality", "min_C", "max_C", "spread"};
    for (const auto& kv : range) {
        const double spread = kv.second.first > 0.0 ? kv.second.second / kv.second.first : 0.0;
        t.add_row({kv.first, vvb::format_double(kv.second.first), vvb::format_double(kv.second.second),
                   vvb::format_double(spread)});
    }
    t.write((fs::path(cfg.out_dir) / "constants_summary.csv").string());

    std::ofstream plot(fs::path(cfg.out_dir) / "plot_constants.gp");
    plot << "set datafile separator ','\n"
            "set key autotitle columnhead\n"
            "set logscale y\n"
            "set style data histogram\n"
            "set style fill solid 0.6\n"
            "set ylabel 'inferred constant'\n"
            "plot 'constants_summary.csv' using 2:xtic(1) title 'min C', '' using 3 title 'max C'\n";
    info(cfg, "report: constants_summary.csv and plot_constants.gp written");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral toolkit for the variable-viscosity Boussinesq system"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions opt;
    app.add_option("--config", opt.config_path, "JSON run configuration");
    auto* seed_opt = app.add_option("--seed", opt.seed_override, "override the config seed");
    app.add_option("--out", opt.out_override, "override the output directory");
    app.add_flag("--quiet", opt.quiet, "suppress progress output");

    auto* simulate = app.add_subcommand("simulate", "run the Picard solver and emit reports");
    auto* verify = app.add_subcommand("verify-ops", "operator-norm and lambda-decay probes");
    auto* besov = app.add_subcommand("besov", "heat/dyadic norm equivalence corpus");
    auto* sweep = app.add_subcommand("sweep", "epsilon sweep or data-scale sweep");
    auto* report = app.add_subcommand("report", "aggregate the cross-run ledger");

    CLI11_PARSE(app, argc, argv);
    opt.has_seed_override = seed_opt->count() > 0;

    try {
        if (simulate->parsed()) return cmd_simulate(opt);
        if (verify->parsed()) return cmd_verify_ops(opt);
        if (besov->parsed()) return cmd_besov(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (report->parsed()) return cmd_report(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
