// Acceptance suite. Prints one PASS/FAIL line per criterion; exit status is
// nonzero if any selected criterion fails.
//
//   acceptance <path-to-invctl> [criterion-id ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "invctl/baseline_forecast.hpp"
#include "invctl/commands.hpp"
#include "invctl/config.hpp"
#include "invctl/cost_engine.hpp"
#include "invctl/passage_renewal.hpp"
#include "oracles.hpp"

using namespace invctl;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string g(double v) { return fmt::format("{:.6g}", v); }

// Shared by criteria 4-6: 1000 series, default experiment settings.
struct ExperimentRun {
    ExperimentConfig cfg;
    ExperimentData data;
};

const ExperimentRun& experiment_run() {
    static const ExperimentRun run = [] {
        const RunConfig rc;
        ExperimentRun r{experiment_config(rc), {}};
        r.data = prepare_experiment(rc.process, r.cfg);
        return r;
    }();
    return run;
}

Outcome oracle_equivalence() {
    const RunConfig cfg;
    const auto checks = run_validation(cfg);
    int failed = 0;
    std::string worst;
    double worst_ratio = 0.0;
    for (const auto& c : checks) {
        if (c.pass) continue;
        ++failed;
        const double ratio = std::fabs(c.analytical - c.mc_mean) / c.tolerance;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = fmt::format("{} t={} analytical={} mc={} tol={}", c.quantity, g(c.t),
                                g(c.analytical), g(c.mc_mean), g(c.tolerance));
        }
    }
    Outcome o;
    o.pass = failed == 0;
    o.detail = fmt::format("{}/{} checks within 3 stderr at {} paths", checks.size() - failed,
                           checks.size(), cfg.mc.n_paths);
    if (failed) o.detail += "; worst: " + worst;
    return o;
}

Outcome partial_moment_identity() {
    const GammaSpec specs[] = {{0.5, 1.0}, {1.0, 2.0}, {2.5, 0.7}, {10.0, 10.0}, {34.0, 10.0}};
    const double fractions[] = {0.25, 0.8, 1.0, 2.0};
    double worst = 0.0;
    int points = 0;
    for (const auto& spec : specs) {
        for (double f : fractions) {
            const double t = f * spec.mean();
            const double quad = oracle::quad(
                [&](double s) { return s * oracle::gamma_density(spec.shape, spec.rate, s); }, 0.0,
                t);
            worst = std::max(worst, std::fabs(truncated_mean(spec, t) - quad));
            ++points;
        }
    }
    return {worst <= 1e-8, fmt::format("{} points, max |identity - quadrature| = {:.3g} (limit 1e-8)",
                                       points, worst)};
}

Outcome super_linear_growth() {
    const RunConfig cfg;
    std::string ratios;
    bool pass = true;
    for (int t = 1; t <= 5; ++t) {
        const double one = expected_total_cost(cfg.process, cfg.policy, cfg.costs, t, cfg.series).total;
        const double two =
            expected_total_cost(cfg.process, cfg.policy, cfg.costs, 2.0 * t, cfg.series).total;
        pass = pass && two > 2.0 * one;
        ratios += fmt::format("{}{}", t == 1 ? "" : " ", g(two / one));
    }
    return {pass, "total(2t)/total(t) for t=1..5: " + ratios + " (need > 2)"};
}

Outcome cost_linearity() {
    const auto& run = experiment_run();
    const auto y = mean_cumulative_cost(run.data, run.cfg);
    const double n = static_cast<double>(y.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double x = static_cast<double>(k + 1);
        sx += x;
        sy += y[k];
        sxx += x * x;
        sxy += x * y[k];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double fit = intercept + slope * static_cast<double>(k + 1);
        ss_res += (y[k] - fit) * (y[k] - fit);
        ss_tot += (y[k] - sy / n) * (y[k] - sy / n);
    }
    const double r2 = 1.0 - ss_res / ss_tot;
    return {r2 >= 0.99, fmt::format("R^2 = {:.5f} over {} periods, {} series, slope {} per period",
                                    r2, y.size(), run.cfg.n_series, g(slope))};
}

Outcome table_row() {
    const auto& run = experiment_run();
    const TableSpec row[] = {{40.0, 50.0, 1.0, 5.0, 10.0}};
    const double ours = run_table_experiment(run.data, run.cfg, row)[0].mean_total;
    const double target = 2108.0;
    const double rel = (ours - target) / target;

    auto projected = run.cfg;
    projected.trigger = ReorderTrigger::forecast_projected;
    const double alt = run_table_experiment(run.data, projected, row)[0].mean_total;
    return {std::fabs(rel) <= 0.15,
            fmt::format("R=40 Q=50 C_h=1 C_o=5 C_so=10: {} vs 2108 ({:+.1f}%, limit 15%), trigger {}; "
                        "forecast_projected trigger gives {} ({:+.1f}%)",
                        g(ours), 100.0 * rel, to_string(run.cfg.trigger), g(alt),
                        100.0 * (alt - target) / target)};
}

Outcome table_monotonicity() {
    const auto& run = experiment_run();
    const auto start = std::chrono::steady_clock::now();
    const auto grid = table1_grid();
    const auto rows = run_table_experiment(run.data, run.cfg, grid);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto violations = table_monotonicity_violations(rows);
    std::string detail = fmt::format("{} rows, {} violations ({:.2f} s)", rows.size(),
                                     violations.size(), secs);
    if (!violations.empty()) detail += "; first: " + violations.front();
    return {violations.empty(), detail};
}

Outcome fpt_report() {
    const RunConfig cfg;
    const auto diag = fpt_diagnostics(cfg);
    const bool produced = !diag.csv.empty() && !diag.ks_csv.empty() &&
                          diag.ks_gamma.size() == static_cast<std::size_t>(cfg.fpt.passages);
    double worst_self = 0.0;
    std::string gamma_ks;
    for (std::size_t i = 0; i < diag.ks_self.size(); ++i) {
        worst_self = std::max(worst_self, diag.ks_self[i]);
        gamma_ks += fmt::format("{}{}", i ? " " : "", g(diag.ks_gamma[i]));
    }
    return {produced && worst_self < 0.01,
            fmt::format("report {}; max self KS {:.4f} at {} paths (limit 0.01); gamma KS n=1..{}: {}",
                        produced ? "produced" : "MISSING", worst_self, cfg.fpt.n_paths,
                        diag.ks_gamma.size(), gamma_ks)};
}

std::string cli_path;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const char* commands[] = {"expected-cost", "sweep", "simulate", "validate",
                              "fpt-diag",      "table1", "compare"};
    const auto root = fs::temp_directory_path() / "invctl_acceptance_determinism";
    fs::remove_all(root);
    int csvs = 0;
    std::vector<std::string> differing;
    std::vector<std::string> missing;
    for (const char* cmd : commands) {
        const int before = csvs;
        std::vector<fs::path> dirs;
        for (const char* run : {"a", "b"}) {
            const auto dir = root / cmd / run;
            fs::create_directories(dir);
            const auto line = fmt::format("\"{}\" {} --out \"{}\" > \"{}\" 2>&1", cli_path, cmd,
                                          dir.string(), (dir / "log.txt").string());
            const int status = std::system(line.c_str());
            if (status == -1) throw std::runtime_error("cannot launch " + cli_path);
            dirs.push_back(dir);
        }
        for (const auto& entry : fs::directory_iterator(dirs[0])) {
            if (entry.path().extension() != ".csv") continue;
            ++csvs;
            if (slurp(entry.path()) != slurp(dirs[1] / entry.path().filename())) {
                differing.push_back(fmt::format("{}/{}", cmd, entry.path().filename().string()));
            }
        }
        if (csvs == before) missing.push_back(cmd);
    }
    fs::remove_all(root);
    std::string detail = fmt::format("{} CSV files from 7 commands compared across two runs", csvs);
    for (const auto& d : differing) detail += "; differs: " + d;
    for (const auto& m : missing) detail += "; no CSV from " + m;
    return {missing.empty() && differing.empty(), detail};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-invctl> [criterion-id ...]\n";
        return 2;
    }
    cli_path = argv[1];
    const std::vector<Criterion> criteria = {
        {1, "oracle equivalence", oracle_equivalence},
        {2, "partial-moment identity", partial_moment_identity},
        {3, "super-linear cost growth", super_linear_growth},
        {4, "rolling-forecast cost linearity", cost_linearity},
        {5, "reorder table row 40/50/1/5/10", table_row},
        {6, "reorder table monotonicity", table_monotonicity},
        {7, "first-passage report", fpt_report},
        {8, "determinism", determinism},
    };
    std::vector<int> selected;
    for (int i = 2; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
            continue;
        }
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        fmt::print("C{} {} {}: {}\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
