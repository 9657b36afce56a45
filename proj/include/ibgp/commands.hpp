#pragma once

// CSV and table emission for the CLI subcommands. Output is byte-stable for
// a fixed config: fixed column order, %.10g decimals, rows sorted
// lexicographically over (R, lambda, region, event).

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "ibgp/analytics.hpp"
#include "ibgp/config.hpp"
#include "ibgp/geometry.hpp"
#include "ibgp/montecarlo.hpp"
#include "ibgp/protocol.hpp"

namespace ibgp {

struct CommandStats {
    long long rows = 0;
    long long error_rows = 0;
};

namespace detail {

inline std::string fmt10(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

inline std::string error_cell(const std::exception& e) {
    std::string text = e.what();
    for (char& c : text) {
        if (c == ',' || c == ' ' || c == '\n') c = '_';
    }
    return "err:" + text;
}

inline HighwayModel model_for(const ScenarioConfig& cfg, double R) {
    if (cfg.chord) return HighwayModel::chord(cfg.W, R, cfg.n);
    return HighwayModel::literal(cfg.W, *cfg.L, R, cfg.n);
}

// One (field, N-label) pair of the sweep grid.
struct FieldPoint {
    NodeField field;
    std::string n_label;  // empty in poisson mode
};

inline std::vector<FieldPoint> field_grid(const ScenarioConfig& cfg) {
    std::vector<FieldPoint> out;
    if (!cfg.lambda_list.empty()) {
        for (const double lam : cfg.lambda_list) out.push_back({NodeField::poisson(lam), ""});
    } else {
        for (const double nodes : cfg.N_list) {
            out.push_back({NodeField::fixed(nodes, *cfg.area), fmt10(nodes)});
        }
    }
    std::sort(out.begin(), out.end(), [](const FieldPoint& a, const FieldPoint& b) {
        return a.field.effective_lambda() < b.field.effective_lambda();
    });
    return out;
}

inline std::vector<Region> sweep_regions() {
    // Lexicographic by name: half_disk, lens, zone1, zone2, zone3.
    return {Region::forward_half_disk(0), Region::lens(0), Region::sector_zone(0, 1),
            Region::sector_zone(0, 2), Region::sector_zone(0, 3)};
}

// Area fed to the analytic formulas; the lens defers to the mode-dependent
// closed form, everything else is geometric.
inline double analytic_region_area(const Region& r, const HighwayModel& m) {
    if (r.kind == Region::Kind::lens) return analytic_lens_area(m);
    return region_area(r, m);
}

inline ZonePolicy policy_from_name(const std::string& name) {
    if (name == "lens_only") return ZonePolicy::lens_only();
    if (name == "fixed_zone1") return ZonePolicy::fixed_zone(1);
    if (name == "fixed_zone2") return ZonePolicy::fixed_zone(2);
    if (name == "fixed_zone3") return ZonePolicy::fixed_zone(3);
    if (name == "escalating") return ZonePolicy::escalating();
    throw ConfigError("protocol.policy: unknown policy '" + name + "'");
}

}  // namespace detail

inline const char* kSweepCsvHeader =
    "R_m,W_m,L_m,lambda,N,region,event,analytic,mc_p_hat,mc_ci_low,mc_ci_high,z_score,trials,seed";

/// Analytic void probabilities over the (R, lambda, region) grid.
inline CommandStats run_analyze(const ScenarioConfig& cfg, std::ostream& out) {
    CommandStats stats;
    std::vector<double> radii = cfg.R_list;
    std::sort(radii.begin(), radii.end());
    const auto fields = detail::field_grid(cfg);
    out << kSweepCsvHeader << "\n";
    for (const double R : radii) {
        const HighwayModel model = detail::model_for(cfg, R);
        for (const auto& fp : fields) {
            for (const Region& region : detail::sweep_regions()) {
                ++stats.rows;
                std::string analytic;
                try {
                    analytic = detail::fmt10(p_void(fp.field, detail::analytic_region_area(region, model)));
                } catch (const std::exception& e) {
                    analytic = detail::error_cell(e);
                    ++stats.error_rows;
                }
                out << detail::fmt10(R) << ',' << detail::fmt10(model.width) << ','
                    << detail::fmt10(model.cell_length) << ','
                    << detail::fmt10(fp.field.effective_lambda()) << ',' << fp.n_label << ','
                    << region.name() << ",void," << analytic << ",,,,,,\n";
            }
        }
    }
    return stats;
}

/// Analytic values plus Monte Carlo estimates and z-scores. The lens row is
/// only simulated in chord-consistent mode; the literal closed form matches
/// no planar region, so its MC columns stay empty there.
inline CommandStats run_simulate(const ScenarioConfig& cfg, std::ostream& out) {
    if (!cfg.trials) throw ConfigError("missing key mc.trials");
    if (!cfg.seed) throw ConfigError("missing key mc.seed");
    CommandStats stats;
    std::vector<double> radii = cfg.R_list;
    std::sort(radii.begin(), radii.end());
    const auto fields = detail::field_grid(cfg);
    out << kSweepCsvHeader << "\n";
    for (const double R : radii) {
        const HighwayModel model = detail::model_for(cfg, R);
        for (const auto& fp : fields) {
            for (const Region& region : detail::sweep_regions()) {
                ++stats.rows;
                std::string analytic, p_hat, ci_low, ci_high, z_col;
                bool errored = false;
                double analytic_value = 0.0;
                try {
                    analytic_value = p_void(fp.field, detail::analytic_region_area(region, model));
                    analytic = detail::fmt10(analytic_value);
                } catch (const std::exception& e) {
                    analytic = detail::error_cell(e);
                    errored = true;
                }
                const bool simulate_region =
                    !errored && (region.kind != Region::Kind::lens ||
                                 model.mode == GeometryMode::chord_consistent);
                if (simulate_region) {
                    try {
                        const SimEstimate est =
                            estimate_probability(fp.field, model, region, Event::void_region(),
                                                 *cfg.trials, *cfg.seed, cfg.threads);
                        const CompareReport rep = compare_to_analytic(est, analytic_value);
                        p_hat = detail::fmt10(est.p_hat);
                        ci_low = detail::fmt10(est.ci95_low);
                        ci_high = detail::fmt10(est.ci95_high);
                        z_col = detail::fmt10(rep.z_score);
                    } catch (const std::exception& e) {
                        z_col = detail::error_cell(e);
                        errored = true;
                    }
                }
                if (errored) ++stats.error_rows;
                out << detail::fmt10(R) << ',' << detail::fmt10(model.width) << ','
                    << detail::fmt10(model.cell_length) << ','
                    << detail::fmt10(fp.field.effective_lambda()) << ',' << fp.n_label << ','
                    << region.name() << ",void," << analytic << ',' << p_hat << ',' << ci_low << ','
                    << ci_high << ',' << z_col << ',' << *cfg.trials << ',' << *cfg.seed << "\n";
            }
        }
    }
    return stats;
}

/// The paper's three table structures, regenerated from the model's own
/// formulas at the configured parameters: lens void over an N x R grid,
/// cumulative node presence over a lambda x m grid, and zone presence over
/// a zone x N grid (presence tables use the first configured radius).
inline CommandStats run_tables(const ScenarioConfig& cfg, std::ostream& out) {
    CommandStats stats;
    std::vector<double> radii = cfg.R_list;
    std::sort(radii.begin(), radii.end());
    const auto fields = detail::field_grid(cfg);
    const bool fixed_mode = !cfg.N_list.empty();
    const char* row_label = fixed_mode ? "N" : "lambda";

    const auto row_name = [&](const detail::FieldPoint& fp) {
        return fixed_mode ? fp.n_label : detail::fmt10(fp.field.effective_lambda());
    };

    // Lens void probability, rows: field, cols: R.
    out << "Table: lens void probability (rows: " << row_label << ", cols: R_m)\n";
    out << row_label;
    for (const double R : radii) out << '\t' << detail::fmt10(R);
    out << "\n";
    for (const auto& fp : fields) {
        out << row_name(fp);
        for (const double R : radii) {
            ++stats.rows;
            try {
                const HighwayModel model = detail::model_for(cfg, R);
                out << '\t' << detail::fmt4(p_void(fp.field, analytic_lens_area(model)));
            } catch (const std::exception&) {
                out << "\terr";
                ++stats.error_rows;
            }
        }
        out << "\n";
    }
    out << "\n";

    // Cumulative presence in the lens, rows: field, cols: m.
    const HighwayModel first_model = detail::model_for(cfg, radii.front());
    out << "Table: lens node presence P(count <= m) at R_m = " << detail::fmt10(radii.front())
        << " (rows: " << row_label << ", cols: m)\n";
    out << row_label;
    for (const long long m : cfg.table_m) out << '\t' << m;
    out << "\n";
    for (const auto& fp : fields) {
        out << row_name(fp);
        for (const long long m : cfg.table_m) {
            ++stats.rows;
            try {
                const double mean = fp.field.effective_lambda() * analytic_lens_area(first_model);
                out << '\t' << detail::fmt4(poisson_cdf(mean, m));
            } catch (const std::exception&) {
                out << "\terr";
                ++stats.error_rows;
            }
        }
        out << "\n";
    }
    out << "\n";

    // Zone presence, rows: zone, cols: field.
    out << "Table: forwarding zone node presence P(count >= 1) at R_m = "
        << detail::fmt10(radii.front()) << " (rows: zone, cols: " << row_label << ")\n";
    out << "zone";
    for (const auto& fp : fields) out << '\t' << row_name(fp);
    out << "\n";
    const char* zone_names[3] = {"I", "II", "III"};
    for (int k = 1; k <= 3; ++k) {
        out << zone_names[k - 1];
        for (const auto& fp : fields) {
            ++stats.rows;
            try {
                out << '\t' << detail::fmt4(p_at_least_one(fp.field, zone_area(first_model, k)));
            } catch (const std::exception&) {
                out << "\terr";
                ++stats.error_rows;
            }
        }
        out << "\n";
    }
    return stats;
}

/// Delivery ratio per policy at the first configured radius and density,
/// with the lens-chain connectivity product as the analytic bound column.
inline CommandStats run_geocast(const ScenarioConfig& cfg, std::ostream& out) {
    if (!cfg.trials) throw ConfigError("missing key mc.trials");
    if (!cfg.seed) throw ConfigError("missing key mc.seed");
    if (!cfg.source_cell) throw ConfigError("missing key protocol.source_cell");
    if (!cfg.geocast_lo) throw ConfigError("missing key protocol.geocast_lo");
    if (!cfg.geocast_hi) throw ConfigError("missing key protocol.geocast_hi");
    if (!cfg.max_hops) throw ConfigError("missing key protocol.max_hops");
    if (*cfg.source_cell < 0 || *cfg.source_cell >= *cfg.geocast_lo ||
        *cfg.geocast_lo > *cfg.geocast_hi || *cfg.geocast_hi >= cfg.n) {
        throw ConfigError("protocol: requires 0 <= source_cell < geocast_lo <= geocast_hi < geometry.n");
    }

    std::vector<double> radii = cfg.R_list;
    std::sort(radii.begin(), radii.end());
    const HighwayModel model = detail::model_for(cfg, radii.front());
    const auto fields = detail::field_grid(cfg);
    const NodeField& field = fields.front().field;

    std::vector<std::string> policies;
    if (cfg.policy == "all") {
        policies = {"escalating", "fixed_zone1", "fixed_zone2", "fixed_zone3", "lens_only"};
    } else {
        policies = {cfg.policy};
    }

    const int hops = *cfg.geocast_lo - *cfg.source_cell;
    std::string bound;
    try {
        bound = detail::fmt10(end_to_end_connectivity(field, model, hops));
    } catch (const std::exception& e) {
        bound = detail::error_cell(e);
    }

    CommandStats stats;
    out << "policy,hops,delivery_p_hat,ci_low,ci_high,analytic_bound,escalations_mean\n";
    for (const auto& name : policies) {
        ++stats.rows;
        GeocastScenario scenario;
        scenario.source_cell = *cfg.source_cell;
        scenario.geocast_lo = *cfg.geocast_lo;
        scenario.geocast_hi = *cfg.geocast_hi;
        scenario.policy = detail::policy_from_name(name);
        scenario.max_hops = *cfg.max_hops;
        try {
            const GeocastStats gs =
                geocast_stats(field, model, scenario, *cfg.trials, *cfg.seed, cfg.threads);
            out << name << ',' << hops << ',' << detail::fmt10(gs.delivery.p_hat) << ','
                << detail::fmt10(gs.delivery.ci95_low) << ',' << detail::fmt10(gs.delivery.ci95_high)
                << ',' << bound << ',' << detail::fmt10(gs.escalations_mean) << "\n";
        } catch (const std::exception& e) {
            ++stats.error_rows;
            out << name << ',' << hops << ",,,," << bound << ',' << detail::error_cell(e) << "\n";
        }
    }
    return stats;
}

}  // namespace ibgp
