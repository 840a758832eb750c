#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "invctl/cost_engine.hpp"
#include "invctl/params.hpp"

namespace invctl {

/// ARIMA(p, d, q) fitted by two-stage conditional least squares.
struct ArimaModel {
    int p = 0;
    int d = 0;
    int q = 0;
    std::vector<double> ar_coeffs;
    std::vector<double> ma_coeffs;
    double intercept = 0.0;
    double aic = 0.0;
    bool fallback = false;  ///< true when the (0, d, 0) mean model was forced
};

/// Order search space. d_set may hold 0 and/or 1.
struct ArimaSearch {
    int p_max = 2;
    int q_max = 2;
    std::vector<int> d_set = {0, 1};
};

/// d = 1 when it is allowed and the differenced series has strictly smaller
/// sample variance than the raw series; otherwise the smallest allowed d.
int select_differencing(std::span<const double> series, std::span<const int> d_set);

/// True when every root of 1 - c1 z - ... - cp z^p lies outside the closed unit disk.
bool ar_is_stationary(std::span<const double> ar);

/// Grid search over p <= p_max, q <= q_max at the selected d. Each candidate
/// is fitted by two-stage CLS (long autoregression for innovation proxies,
/// then joint AR/MA regression) on a common sample and scored with
/// AIC = N ln(RSS/N) + 2(p+q+1). Ties favour smaller p+q, then smaller p.
/// Candidates with a singular design, a non-stationary AR part or a
/// non-invertible MA part are discarded; if nothing survives the (0, d, 0)
/// mean model is returned.
ArimaModel fit_arima(std::span<const double> series, const ArimaSearch& search = {});

/// One-step-ahead forecast for the period following `series`.
double forecast_next(const ArimaModel& model, std::span<const double> series);

/// Classic Croston recursion. Element k is the forecast for period k+1 made
/// after observing period k. Sizes and intervals are smoothed only on
/// nonzero-demand periods; before the first demand the forecast is 0.
std::vector<double> croston_forecast(std::span<const double> series, double smoothing);

enum class Forecaster { arima, croston, window_mean };

enum class ReorderTrigger {
    forecast_projected,  ///< order when inventory - forecast <= reorder point
    on_hand,             ///< order when inventory <= reorder point
};

struct ExperimentConfig {
    std::size_t n_series = 1000;
    int window = 12;
    int first_period = 13;  ///< 1-based, inclusive
    int last_period = 50;   ///< 1-based, inclusive
    double period_length = 1.0;
    PolicyParams policy;
    CostParams costs{5.0, 1.0, 10.0, OrderingMode::per_order};
    std::uint64_t base_seed = 1;
    ReorderTrigger trigger = ReorderTrigger::on_hand;
    Forecaster forecaster = Forecaster::arima;
    ArimaSearch search;
    double croston_smoothing = 0.1;

    int sim_periods() const { return last_period - first_period + 1; }
};

void validate(const ExperimentConfig& cfg);

/// For each period k in [first_period, last_period], fit on the trailing
/// window ending at k-1 and return the one-step-ahead forecast, clamped to
/// [0, window max]. A failed fit falls back to the window mean.
std::vector<double> rolling_forecast(std::span<const double> series, const ExperimentConfig& cfg);

struct DiscreteRun {
    CostBreakdown cost;  ///< cost.t holds the number of simulated periods
    long orders = 0;
    long stockout_periods = 0;  ///< periods ending with negative inventory
    std::vector<double> end_inventory;
    std::vector<double> cumulative_total;
};

/// Period-by-period reorder point simulation with backorders:
/// (1) order Q (arrives at once) if the trigger fires, (2) subtract demand,
/// (3) charge c_h on positive and c_so on negative end inventory.
DiscreteRun reorder_sim_discrete(std::span<const double> actuals, std::span<const double> forecasts,
                                 const PolicyParams& policy, const CostParams& costs,
                                 ReorderTrigger trigger = ReorderTrigger::forecast_projected);

/// Demand series (per-period increments) and rolling forecasts for every
/// series of an experiment, restricted to the simulated periods.
struct ExperimentData {
    std::vector<std::vector<double>> series;     ///< full series, last_period values
    std::vector<std::vector<double>> actuals;    ///< simulated periods only
    std::vector<std::vector<double>> forecasts;  ///< aligned with actuals
};

ExperimentData prepare_experiment(const ProcessParams& params, const ExperimentConfig& cfg);

/// One row of the reorder-point grid. R is the reorder level, so a = x0 - R.
struct TableSpec {
    double R;
    double Q;
    double c_h;
    double c_o;
    double c_so;
};

struct TableRow {
    TableSpec spec;
    double mean_total = 0.0;
    double stderr_total = 0.0;
    double mean_orders = 0.0;
    double stockout_rate = 0.0;  ///< fraction of simulated periods ending short
};

/// The 48-row grid R in {40,50,60}, Q in {50,60,110,120}, c_h = 1,
/// c_o in {5,10}, c_so in {10,15}, in publication order.
std::vector<TableSpec> table1_grid();

/// Runs every grid row on the same demand series and forecasts.
std::vector<TableRow> run_table_experiment(const ProcessParams& params,
                                           const ExperimentConfig& cfg,
                                           std::span<const TableSpec> grid);
std::vector<TableRow> run_table_experiment(const ExperimentData& data, const ExperimentConfig& cfg,
                                           std::span<const TableSpec> grid);

/// Mean over series of the cumulative realized cost after each simulated
/// period, under cfg.policy and cfg.costs.
std::vector<double> mean_cumulative_cost(const ExperimentData& data, const ExperimentConfig& cfg);

}  // namespace invctl
