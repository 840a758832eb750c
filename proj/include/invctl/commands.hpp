#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "invctl/baseline_forecast.hpp"
#include "invctl/config.hpp"
#include "invctl/cost_engine.hpp"

namespace invctl {

inline constexpr const char* kCostCsvHeader = "a,Q,c_h,c_o,c_so,mode,t,ordering,holding,shortage,total";
inline constexpr const char* kTableCsvHeader =
    "R,Q,C_h,C_o,C_so,mean_total,stderr_total,mean_orders,stockout_rate";
inline constexpr const char* kFptCsvHeader = "n,shape,rate,t,gamma_cdf,paper_literal,empirical";
inline constexpr const char* kFptKsCsvHeader = "n,shape,rate,ks_gamma,ks_self";
inline constexpr const char* kValidationCsvHeader =
    "quantity,t,analytical,mc_mean,mc_stderr,tolerance,pass";
inline constexpr const char* kCompareCsvHeader = "t,analytical_total,experiment_cumulative_total";

std::string cost_rows_csv(std::span<const SweepRow> rows);
std::string curve_csv(const CostCurve& curve, const PolicyParams& policy, const CostParams& costs);
std::string table_csv(std::span<const TableRow> rows);

/// One analytical-vs-Monte-Carlo comparison.
struct ValidationCheck {
    std::string quantity;  ///< expected_renewals, expected_inventory, integrated_renewals, total_cost
    double t = 0.0;
    double analytical = 0.0;
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    double tolerance = 0.0;  ///< 3 stderr (+ mean MC shortage cost for total_cost)
    bool pass = false;
};

/// Compares E[R_t], E[X_t], E[int R ds] and the total cost with Monte Carlo
/// means at every cfg.mc.validate_times point.
std::vector<ValidationCheck> run_validation(const RunConfig& cfg);
std::string validation_csv(std::span<const ValidationCheck> checks);

/// Describes every slice of a Table-1 style grid where the mean total
/// decreases as R, Q (within {50,60} or {110,120}), C_o or C_so increases.
/// Empty when the table is monotone.
std::vector<std::string> table_monotonicity_violations(std::span<const TableRow> rows);

struct FptDiagnostics {
    std::string csv;     ///< per grid point, kFptCsvHeader
    std::string ks_csv;  ///< per passage index, kFptKsCsvHeader
    std::vector<double> ks_gamma;
    std::vector<double> ks_self;
};

FptDiagnostics fpt_diagnostics(const RunConfig& cfg);

/// Subcommands. Each writes its files under `out` and a short report to
/// `log`, returning the process exit code.
int cmd_expected_cost(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_validate(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_fpt_diag(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_table1(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_compare(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

}  // namespace invctl
