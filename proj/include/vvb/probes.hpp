#pragma once

// Seeded ensemble probes behind `verify-ops` and `besov`: empirical operator
// norms for the Duhamel family, lambda-decay slopes for the damped variants,
// and the heat/dyadic norm-equivalence corpus. Boundedness is reported as a
// finite, refinement-stable ratio, never as a certified constant.

#include <cstdint>
#include <string>
#include <vector>

#include "vvb/besov.hpp"
#include "vvb/duhamel.hpp"
#include "vvb/exponents.hpp"
#include "vvb/io.hpp"
#include "vvb/random.hpp"

namespace vvb {

struct ProbeRow {
    std::string op;
    std::string exponents;
    std::string grid;
    int ensemble = 0;
    double ratio = 0.0;             // worst-case out/in over the ensemble
    double refinement_ratio = 0.0;  // same probe on 2x finer grids / base
};

namespace detail {

inline Timeline probe_forcing(const Grid& g, double T, int M, std::uint64_t seed, int band = 6) {
    const SpectralField X = random_band_limited(g, 1, band, seed);
    const SpectralField Y = random_band_limited(g, 1, band, seed + 1000);
    const double w = M_PI * (1.0 + static_cast<double>(seed % 3)) / T;
    return sample_timeline(graded_times(T, M),
                           [&](double t) { return std::cos(w * t) * X + std::sin(w * t) * Y; });
}

struct ProbeGrid {
    int n;
    int nodes;
};

inline std::string grid_label(int dim, const ProbeGrid& pg) {
    return std::to_string(dim) + "d n=" + std::to_string(pg.n) + " M=" + std::to_string(pg.nodes);
}

}  // namespace detail

/// One operator-norm probe at two resolutions.
inline ProbeRow duhamel_norm_probe(const std::string& name, DuhamelKind kind, const SpaceTimeNormSpec& in,
                                   const SpaceTimeNormSpec& out, std::uint64_t seed, int ensemble = 32,
                                   int dim = 2, double T = 2.0) {
    ProbeRow row;
    row.op = name;
    row.exponents = "in(rho=" + format_double(in.rho) + ",q=" + format_double(in.q) + ",a=" + format_double(in.a) +
                    ") out(rho=" + format_double(out.rho) + ",q=" + format_double(out.q) +
                    ",a=" + format_double(out.a) + ")";
    row.ensemble = ensemble;
    const detail::ProbeGrid base{32, 16}, fine{64, 32};
    auto worst = [&](const detail::ProbeGrid& pg) {
        const Grid g = make_grid(dim, pg.n, 2.0 * M_PI);
        double w = 0.0;
        for (int m = 0; m < ensemble; ++m) {
            const Timeline f = detail::probe_forcing(g, T, pg.nodes, seed + m);
            const WeightedProbeResult r = duhamel_weighted(WeightedProbeSpec{kind, in, out, ""}, f);
            w = std::max(w, r.ratio);
        }
        return w;
    };
    row.grid = detail::grid_label(dim, base);
    row.ratio = worst(base);
    const double fine_ratio = worst(fine);
    row.refinement_ratio = row.ratio > 0.0 ? fine_ratio / row.ratio : 0.0;
    return row;
}

/// lambda-decay slope of a damped operator over lambda in {1, 2, 4, 8, 16}.
inline ProbeRow damped_slope_probe(const std::string& name, DuhamelKind kind, bool weighted, double r,
                                   std::uint64_t seed, int ensemble = 8, int dim = 2) {
    ProbeRow row;
    row.op = name;
    row.ensemble = ensemble;
    const Grid g = make_grid(dim, 32, 2.0 * M_PI);
    row.grid = "base " + detail::grid_label(dim, {32, 24});

    // plain shape exponents (d = 2, r = 2 family) or the weighted tuple
    const double q1 = 16.0 / 7.0, q2 = 16.0 / 7.0, q = 8.0 / 7.0;
    const double q3 = 1.0 / (1.0 / q - (2.0 * r - 1.0) / (dim * r));
    const double p1 = 1.6, p3 = 6.0;
    const double p2 = 1.0 / (1.0 / p1 - 1.0 / p3);
    const double gamma1 = 0.5 * (1.0 - dim / p3) - 1.0 / (2.0 * r);
    const double beta = 0.5 * (2.0 - dim / p2) - 1.0 / (2.0 * r);
    row.exponents = weighted ? ("r=" + format_double(r) + " p2=" + format_double(p2) + " p3=" + format_double(p3))
                             : ("r=" + format_double(r) + " q1=" + format_double(q1) + " q3=" + format_double(q3));

    std::vector<double> lx, ly;
    for (double lambda : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        double worst = 0.0;
        for (int m = 0; m < ensemble; ++m) {
            Timeline v = detail::probe_forcing(g, 2.0, 24, seed + m, 5);
            for (auto& s : v.snapshots) s *= 2.5;
            const Timeline omega = detail::probe_forcing(g, 2.0, 24, seed + 500 + m, 5);
            const DampedProbeResult res =
                weighted ? duhamel_damped_weighted(kind, v, omega, r, p2, p3, beta, gamma1, lambda)
                         : duhamel_damped_plain(kind, v, omega, r, q1, q2, q3, lambda);
            worst = std::max(worst, res.out_norm);
        }
        lx.push_back(std::log(lambda));
        ly.push_back(std::log(worst));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    row.ratio = (n * sxy - sx * sy) / (n * sxx - sx * sx);  // the fitted slope
    row.refinement_ratio = weighted ? -1.0 / (2.0 * r) + 0.1 : -1.0 / (4.0 * r) + 0.1;  // the target bound
    return row;
}

/// The full verify-ops probe set.
inline std::vector<ProbeRow> run_verify_ops(std::uint64_t seed, int ensemble = 32) {
    std::vector<ProbeRow> rows;
    const int d = 2;
    const double r = 2.0, p = 6.0 / 5.0;
    const double inf = std::numeric_limits<double>::infinity();

    // plain operators on their Lebesgue pairs
    const double q_c = 1.0 / (1.0 / p - (2.0 * r - 1.0) / (d * r));
    rows.push_back(duhamel_norm_probe("C:Lr_Lp->L2r_Lq", DuhamelKind::C, SpaceTimeNormSpec{r, p, 0.0},
                                      SpaceTimeNormSpec{2.0 * r, q_c, 0.0}, seed, ensemble));
    const double q_b = 1.0 / (1.0 / p - (r - 1.0) / (d * r));
    rows.push_back(duhamel_norm_probe("B:Lr_Lp->L2r_Lq", DuhamelKind::B, SpaceTimeNormSpec{r, p, 0.0},
                                      SpaceTimeNormSpec{2.0 * r, q_b, 0.0}, seed + 10, ensemble));
    const double p_star = d * p / (d - p);
    rows.push_back(duhamel_norm_probe("B:Lr_Lp->Lr_Lpstar", DuhamelKind::B, SpaceTimeNormSpec{r, p, 0.0},
                                      SpaceTimeNormSpec{r, p_star, 0.0}, seed + 20, ensemble));
    rows.push_back(duhamel_norm_probe("A:L2_L2->L2_L2", DuhamelKind::A, SpaceTimeNormSpec{2.0, 2.0, 0.0},
                                      SpaceTimeNormSpec{2.0, 2.0, 0.0}, seed + 30, ensemble));

    // weighted operators on the theorem2 family (d = 2, p = 1.6, r = 16)
    const Theorem2Family fam = make_theorem2_family(2, 1.6, 16.0);
    const double r2 = 2.0 * 16.0;
    rows.push_back(duhamel_norm_probe("C_w:ta->tg1", DuhamelKind::C, SpaceTimeNormSpec{r2, 1.6, fam.w.alpha},
                                      SpaceTimeNormSpec{r2, fam.p3, fam.w.gamma1}, seed + 40, ensemble));
    rows.push_back(duhamel_norm_probe("C_w:ta->tg2_inf", DuhamelKind::C, SpaceTimeNormSpec{r2, 1.6, fam.w.alpha},
                                      SpaceTimeNormSpec{inf, fam.p3, fam.w.gamma2}, seed + 50, ensemble));
    rows.push_back(duhamel_norm_probe("B_w:ta->tb", DuhamelKind::B, SpaceTimeNormSpec{r2, 1.6, fam.w.alpha},
                                      SpaceTimeNormSpec{r2, fam.p2, fam.w.beta}, seed + 60, ensemble));
    rows.push_back(duhamel_norm_probe("B_w:tb->tg1", DuhamelKind::B, SpaceTimeNormSpec{r2, fam.p2, fam.w.beta},
                                      SpaceTimeNormSpec{r2, fam.p3, fam.w.gamma1}, seed + 70, ensemble));
    rows.push_back(duhamel_norm_probe("A_w:ta->ta", DuhamelKind::A, SpaceTimeNormSpec{r2, 2.0, fam.w.alpha},
                                      SpaceTimeNormSpec{r2, 2.0, fam.w.alpha}, seed + 80, ensemble));
    rows.push_back(duhamel_norm_probe("B_w:ta->ta_pstar", DuhamelKind::B, SpaceTimeNormSpec{r2, 1.6, fam.w.alpha},
                                      SpaceTimeNormSpec{r2, 8.0, fam.w.alpha}, seed + 90, ensemble));

    // damped slopes (ratio column carries the slope, refinement column the target)
    rows.push_back(damped_slope_probe("C_damped_slope", DuhamelKind::C, false, 2.0, seed + 100, 8));
    rows.push_back(damped_slope_probe("B_damped_slope", DuhamelKind::B, false, 2.0, seed + 110, 8));
    rows.push_back(damped_slope_probe("B_damped_weighted_slope", DuhamelKind::B, true, 4.0, seed + 120, 8));
    rows.push_back(damped_slope_probe("C_damped_weighted_slope", DuhamelKind::C, true, 4.0, seed + 130, 8));

    return rows;
}

inline CsvTable probe_rows_to_csv(const std::vector<ProbeRow>& rows) {
    CsvTable t;
    t.header = {"operator", "exponents", "grid", "ensemble", "ratio", "refinement_ratio"};
    for (const auto& r : rows)
        t.add_row({r.op, r.exponents, r.grid, std::to_string(r.ensemble), format_double(r.ratio),
                   format_double(r.refinement_ratio)});
    return t;
}

// ---------------------------------------------------------------------------
// Besov equivalence corpus
// ---------------------------------------------------------------------------

struct BesovCorpusRow {
    int field_id = 0;
    double p = 0.0, r = 0.0, s = 0.0;
    double dyadic = 0.0, heat = 0.0, ratio = 0.0;
};

/// 20-field seeded corpus at s in {-1/2, -1, d/p - 1}.
inline std::vector<BesovCorpusRow> run_besov_corpus(std::uint64_t seed, int dim = 2, int n_grid = 64,
                                                    int corpus = 20, double p = 3.0, double r = 2.0) {
    const Grid g = make_grid(dim, n_grid, 2.0 * M_PI);
    std::vector<BesovCorpusRow> rows;
    const double s_crit = critical_regularity(dim, p);
    for (double s : {-0.5, -1.0, s_crit}) {
        for (int m = 0; m < corpus; ++m) {
            const SpectralField f = random_band_limited(g, 1, 10, seed + m);
            BesovCorpusRow row;
            row.field_id = m;
            row.p = p;
            row.r = r;
            row.s = s;
            const BesovIndex idx{p, r, s};
            row.dyadic = besov_norm_dyadic(f, idx);
            row.heat = besov_norm_heat(f, idx);
            row.ratio = row.heat / row.dyadic;
            rows.push_back(row);
        }
    }
    return rows;
}

inline CsvTable besov_rows_to_csv(const std::vector<BesovCorpusRow>& rows) {
    CsvTable t;
    t.header = {"field_id", "p", "r", "s", "dyadic", "heat", "ratio"};
    for (const auto& r : rows)
        t.add_row({std::to_string(r.field_id), format_double(r.p), format_double(r.r), format_double(r.s),
                   format_double(r.dyadic), format_double(r.heat), format_double(r.ratio)});
    return t;
}

}  // namespace vvb
