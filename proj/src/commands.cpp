#include "invctl/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "invctl/errors.hpp"
#include "invctl/inventory_mc.hpp"
#include "invctl/passage_renewal.hpp"
#include "invctl/report.hpp"

namespace invctl {

using report::num;

namespace {

std::string cost_row(const PolicyParams& policy, const CostParams& costs, const CostBreakdown& c) {
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", num(policy.a), num(policy.Q),
                       num(costs.c_h), num(costs.c_o), num(costs.c_so),
                       to_string(costs.ordering_mode), num(c.t), num(c.ordering),
                       num(c.holding), num(c.shortage), num(c.total));
}

std::string grid_label(const PolicyParams& p, const CostParams& c) {
    return fmt::format("a={} Q={} C_o={}", num(p.a), num(p.Q), num(c.c_o));
}

}  // namespace

std::string cost_rows_csv(std::span<const SweepRow> rows) {
    std::string out = std::string(kCostCsvHeader) + "\n";
    for (const auto& r : rows) out += cost_row(r.policy, r.costs, r.cost);
    return out;
}

std::string curve_csv(const CostCurve& curve, const PolicyParams& policy, const CostParams& costs) {
    std::string out = std::string(kCostCsvHeader) + "\n";
    for (const auto& p : curve.points) out += cost_row(policy, costs, p);
    return out;
}

std::string table_csv(std::span<const TableRow> rows) {
    std::string out = std::string(kTableCsvHeader) + "\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", num(r.spec.R), num(r.spec.Q),
                           num(r.spec.c_h), num(r.spec.c_o), num(r.spec.c_so), num(r.mean_total),
                           num(r.stderr_total), num(r.mean_orders), num(r.stockout_rate));
    }
    return out;
}

std::vector<ValidationCheck> run_validation(const RunConfig& cfg) {
    validate(cfg);
    ProcessParams analytic = cfg.process;
    analytic.lambda *= cfg.analytic_lambda_scale;
    const auto estimates =
        mc_estimates(cfg.process, cfg.policy, cfg.costs, cfg.mc.validate_times,
                     McOptions{cfg.mc.n_paths, cfg.mc.base_seed, 1});
    std::vector<ValidationCheck> checks;
    for (const auto& e : estimates) {
        auto add = [&](const char* name, double analytical, const Stat& s, double slack) {
            const double tol = 3.0 * s.se + slack;
            checks.push_back({name, e.t, analytical, s.mean, s.se, tol,
                              std::fabs(analytical - s.mean) <= tol});
        };
        add("expected_renewals", expected_renewals(analytic, cfg.policy, e.t, cfg.series),
            e.orders, 0.0);
        add("expected_inventory", expected_inventory(analytic, cfg.policy, e.t, cfg.series),
            e.inventory, 0.0);
        add("integrated_renewals",
            expected_integrated_renewals(analytic, cfg.policy, e.t, cfg.series),
            e.integrated_orders, 0.0);
        add("total_cost",
            expected_total_cost(analytic, cfg.policy, cfg.costs, e.t, cfg.series).total, e.total,
            std::fabs(e.shortage.mean));
    }
    return checks;
}

std::string validation_csv(std::span<const ValidationCheck> checks) {
    std::string out = std::string(kValidationCsvHeader) + "\n";
    for (const auto& c : checks) {
        out += fmt::format("{},{},{},{},{},{},{}\n", c.quantity, num(c.t), num(c.analytical),
                           num(c.mc_mean), num(c.mc_stderr), num(c.tolerance),
                           c.pass ? "pass" : "fail");
    }
    return out;
}

std::vector<std::string> table_monotonicity_violations(std::span<const TableRow> rows) {
    std::vector<std::string> violations;
    // Field accessors: the varied parameter, then a key of everything held fixed.
    using Key = std::tuple<double, double, double, double, double>;
    struct Axis {
        const char* name;
        double (*value)(const TableSpec&);
        Key (*fixed)(const TableSpec&);
    };
    const Axis axes[] = {
        {"R", [](const TableSpec& s) { return s.R; },
         [](const TableSpec& s) { return Key{0, s.Q, s.c_h, s.c_o, s.c_so}; }},
        {"Q", [](const TableSpec& s) { return s.Q; },
         [](const TableSpec& s) { return Key{s.R, s.Q < 100 ? 0.0 : 1.0, s.c_h, s.c_o, s.c_so}; }},
        {"C_o", [](const TableSpec& s) { return s.c_o; },
         [](const TableSpec& s) { return Key{s.R, s.Q, s.c_h, 0, s.c_so}; }},
        {"C_so", [](const TableSpec& s) { return s.c_so; },
         [](const TableSpec& s) { return Key{s.R, s.Q, s.c_h, s.c_o, 0}; }},
    };
    for (const auto& axis : axes) {
        std::map<Key, std::vector<std::pair<double, double>>> slices;
        for (const auto& r : rows) {
            slices[axis.fixed(r.spec)].emplace_back(axis.value(r.spec), r.mean_total);
        }
        for (auto& [key, pts] : slices) {
            std::sort(pts.begin(), pts.end());
            for (std::size_t i = 1; i < pts.size(); ++i) {
                if (pts[i].second < pts[i - 1].second) {
                    violations.push_back(fmt::format(
                        "total decreases along {} from {} ({}) to {} ({}) with R={} Q={} C_o={} "
                        "C_so={} fixed",
                        axis.name, num(pts[i - 1].first), num(pts[i - 1].second),
                        num(pts[i].first), num(pts[i].second), num(std::get<0>(key)),
                        num(std::get<1>(key)), num(std::get<3>(key)), num(std::get<4>(key))));
                }
            }
        }
    }
    return violations;
}

FptDiagnostics fpt_diagnostics(const RunConfig& cfg) {
    validate(cfg);
    const auto grid = linear_grid(cfg.fpt.grid.t_start, cfg.fpt.grid.t_end, cfg.fpt.grid.steps);
    FptDiagnostics d;
    d.csv = std::string(kFptCsvHeader) + "\n";
    d.ks_csv = std::string(kFptKsCsvHeader) + "\n";
    const std::size_t n_paths = cfg.fpt.n_paths;
    for (long n = 1; n <= cfg.fpt.passages; ++n) {
        const GammaSpec spec = fpt_gamma_spec(cfg.process, cfg.policy, n);
        const auto sample = fpt_samples(cfg.process, cfg.policy, n, n_paths, cfg.fpt.base_seed);
        // Disjoint seeds for the self-consistency batch.
        const auto batch2 =
            fpt_samples(cfg.process, cfg.policy, n, n_paths, cfg.fpt.base_seed + n_paths);
        for (double t : grid) {
            const auto hit = std::upper_bound(sample.begin(), sample.end(), t) - sample.begin();
            const double empirical = static_cast<double>(hit) / static_cast<double>(n_paths);
            d.csv += fmt::format("{},{},{},{},{},{},{}\n", n, num(spec.shape), num(spec.rate),
                                 num(t), num(gamma_cdf(spec, t)),
                                 num(paper_literal_cdf(spec, t)), num(empirical));
        }
        d.ks_gamma.push_back(ks_distance_to_gamma(sample, spec));
        d.ks_self.push_back(ks_two_sample(sample, batch2));
        d.ks_csv += fmt::format("{},{},{},{},{}\n", n, num(spec.shape), num(spec.rate),
                                num(d.ks_gamma.back()), num(d.ks_self.back()));
    }
    return d;
}

int cmd_expected_cost(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
    validate(cfg);
    const auto grid = linear_grid(cfg.grid.t_start, cfg.grid.t_end, cfg.grid.steps);
    CostCurve curve;
    try {
        curve = cost_curve(cfg.process, cfg.policy, cfg.costs, grid, cfg.series);
    } catch (const SeriesNotConverged& e) {
        fmt::print(log, "error: renewal series did not converge at t={} (n={}, last term {}, partial sum {})\n",
                   num(e.t()), e.terms(), num(e.last_term()), num(e.partial_sum()));
        return 1;
    }
    report::write_file(out / "expected_cost.csv", curve_csv(curve, cfg.policy, cfg.costs));
    std::vector<report::LineSeries> lines(4);
    lines[0].name = "total";
    lines[1].name = "ordering";
    lines[2].name = "holding";
    lines[3].name = "shortage";
    for (const auto& p : curve.points) {
        const double vals[] = {p.total, p.ordering, p.holding, p.shortage};
        for (int k = 0; k < 4; ++k) {
            lines[k].x.push_back(p.t);
            lines[k].y.push_back(vals[k]);
        }
    }
    report::write_file(out / "expected_cost.svg",
                       report::line_chart_svg("Expected total cost", "t", "cost", lines));
    const auto [t_star, total_star] = argmax_time(curve);
    fmt::print(log, "expected-cost: {} grid points, argmax t*={} total*={}\n", grid.size(),
               num(t_star), num(total_star));
    const auto negatives = std::count(curve.negative_inventory.begin(),
                                      curve.negative_inventory.end(), true);
    if (negatives > 0) {
        fmt::print(log, "warning: expected inventory < 0 at {} grid points\n", negatives);
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
    validate(cfg);
    std::vector<CostParams> costs_list;
    for (double c_o : cfg.sweep.c_o) {
        CostParams c = cfg.costs;
        c.c_o = c_o;
        costs_list.push_back(c);
    }
    const auto grid = linear_grid(cfg.grid.t_start, cfg.grid.t_end, cfg.grid.steps);
    std::vector<SweepRow> rows;
    try {
        rows = sweep(cfg.process, cfg.policy.x0, costs_list, cfg.sweep.a, cfg.sweep.Q, grid,
                     cfg.series);
    } catch (const SeriesNotConverged& e) {
        fmt::print(log, "error: renewal series did not converge at t={} (n={})\n", num(e.t()),
                   e.terms());
        return 1;
    }
    report::write_file(out / "sweep.csv", cost_rows_csv(rows));
    std::vector<report::LineSeries> lines;
    for (std::size_t i = 0; i < rows.size(); i += grid.size()) {
        report::LineSeries s{grid_label(rows[i].policy, rows[i].costs), {}, {}};
        for (std::size_t k = 0; k < grid.size(); ++k) {
            s.x.push_back(rows[i + k].cost.t);
            s.y.push_back(rows[i + k].cost.total);
        }
        lines.push_back(std::move(s));
    }
    report::write_file(out / "sweep.svg",
                       report::line_chart_svg("Expected total cost sweep", "t", "total cost", lines));
    fmt::print(log, "sweep: {} rows\n", rows.size());
    return 0;
}

int cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
    validate(cfg);
    const Trajectory traj = simulate(cfg.process, cfg.policy, cfg.mc.horizon, cfg.mc.base_seed);
    report::write_file(out / "trajectory.csv", trajectory_to_csv(traj));
    const SimSummary summary = mc_summary(cfg.process, cfg.policy, cfg.costs, cfg.mc.horizon,
                                          cfg.mc.n_paths, cfg.mc.base_seed);
    report::write_file(out / "summary.json", summary_to_json(summary));

    report::LineSeries inv{"inventory", {0.0}, {cfg.policy.x0}};
    for (const auto& e : traj.events) {
        inv.x.push_back(e.t);
        inv.y.push_back(e.inventory_after +
                        (e.kind == EventKind::jump ? cfg.process.alpha : -cfg.policy.Q));
        inv.x.push_back(e.t);
        inv.y.push_back(e.inventory_after);
    }
    inv.x.push_back(cfg.mc.horizon);
    inv.y.push_back(traj.inventory_at(cfg.mc.horizon));
    report::write_file(out / "trajectory.svg",
                       report::line_chart_svg("Inventory level", "t", "inventory",
                                              std::span<const report::LineSeries>(&inv, 1)));
    fmt::print(log, "simulate: {} paths, mean total {} (stderr {}), mean orders {}, shortage fraction {}\n",
               summary.n_paths, num(summary.mean_total), num(summary.stderr_total),
               num(summary.mean_orders), num(summary.shortage_fraction));
    return 0;
}

int cmd_validate(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
    if (cfg.mc.n_paths < 1000) {
        fmt::print(log, "warning: {} paths give insufficient power; use at least 1000\n",
                   cfg.mc.n_paths);
    }
    const auto checks = run_validation(cfg);
    report::write_file(out / "validation.csv", validation_csv(checks));
    bool all = true;
    for (const auto& c : checks) {
        fmt::print(log, "{:<20} t={:<4} analytical={:<12} mc={:<12} stderr={:<10} tol={:<10} {}\n",
                   c.quantity, num(c.t), num(c.analytical), num(c.mc_mean), num(c.mc_stderr),
                   num(c.tolerance), c.pass ? "PASS" : "FAIL");
        all = all && c.pass;
    }
    fmt::print(log, "validate: {}\n", all ? "all checks passed" : "some checks FAILED");
    return all ? 0 : 1;
}

int cmd_fpt_diag(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
    const auto diag = fpt_diagnostics(cfg);
    report::write_file(out / "fpt_diag.csv", diag.csv);
    report::write_file(out / "fpt_ks.csv", diag.ks_csv);

    const auto grid = linear_grid(cfg.fpt.grid.t_start, cfg.fpt.grid.t_end, cfg.fpt.grid.steps);
    std::vector<report::LineSeries> lines;
    for (long n = 1; n <= std::min(cfg.fpt.passages, 3); ++n) {
        const GammaSpec spec = fpt_gamma_spec(cfg.process, cfg.policy, n);
        const auto emp = fpt_empirical_cdf(cfg.process, cfg.policy, n, grid, cfg.fpt.n_paths,
                                           cfg.fpt.base_seed);
        report::LineSeries g{fmt::format("gamma n={}", n), grid, {}};
        for (double t : grid) g.y.push_back(gamma_cdf(spec, t));
        lines.push_back(std::move(g));
        lines.push_back({fmt::format("empirical n={}", n), grid, emp});
    }
    report::write_file(out / "fpt_diag.svg",
                       report::line_chart_svg("First passage time CDF", "t", "P(T_n <= t)", lines));
    for (std::size_t i = 0; i < diag.ks_gamma.size(); ++i) {
        fmt::print(log, "n={} KS(gamma vs empirical)={} KS(batch vs batch)={}\n", i + 1,
                   num(diag.ks_gamma[i]), num(diag.ks_self[i]));
    }
    return 0;
}

int cmd_table1(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
    validate(cfg);
    const auto ecfg = experiment_config(cfg);
    const auto grid = table1_grid();
    const auto rows = run_table_experiment(cfg.process, ecfg, grid);
    report::write_file(out / "table1.csv", table_csv(rows));
    const auto violations = table_monotonicity_violations(rows);
    for (const auto& v : violations) fmt::print(log, "monotonicity: {}\n", v);
    fmt::print(log, "table1: {} rows, {} series, trigger {}, forecaster {}, monotonicity {}\n",
               rows.size(), ecfg.n_series, to_string(ecfg.trigger), to_string(ecfg.forecaster),
               violations.empty() ? "ok" : "VIOLATED");
    return 0;
}

int cmd_compare(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log) {
    validate(cfg);
    const auto ecfg = experiment_config(cfg);
    const auto data = prepare_experiment(cfg.process, ecfg);
    const auto cumulative = mean_cumulative_cost(data, ecfg);
    report::LineSeries analytic{"expected total cost (analytical)", {}, {}};
    report::LineSeries experiment{"rolling-forecast simulation", {}, {}};
    std::string csv = std::string(kCompareCsvHeader) + "\n";
    try {
        for (std::size_t k = 0; k < cumulative.size(); ++k) {
            const double t = static_cast<double>(k + 1) * ecfg.period_length;
            const double total =
                expected_total_cost(cfg.process, cfg.policy, cfg.costs, t, cfg.series).total;
            csv += fmt::format("{},{},{}\n", num(t), num(total), num(cumulative[k]));
            analytic.x.push_back(t);
            analytic.y.push_back(total);
            experiment.x.push_back(t);
            experiment.y.push_back(cumulative[k]);
        }
    } catch (const SeriesNotConverged& e) {
        fmt::print(log, "error: renewal series did not converge at t={} (n={})\n", num(e.t()),
                   e.terms());
        return 1;
    }
    report::write_file(out / "compare.csv", csv);
    const report::LineSeries lines[] = {analytic, experiment};
    report::write_file(out / "compare.svg",
                       report::line_chart_svg(fmt::format("Expected total cost vs rolling forecast "
                                                          "(a={}, Q={})",
                                                          num(cfg.policy.a), num(cfg.policy.Q)),
                                              "t (periods after the first window)", "cost", lines));
    fmt::print(log, "compare: {} periods; final analytical {} vs experiment {}\n",
               cumulative.size(), num(analytic.y.back()), num(experiment.y.back()));
    return 0;
}

}  // namespace invctl
