#include "invctl/baseline_forecast.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>

#include "invctl/demand_process.hpp"
#include "invctl/errors.hpp"
#include "invctl/inventory_mc.hpp"
#include "invctl/parallel.hpp"

namespace invctl {

std::vector<double> croston_forecast(std::span<const double> series, double smoothing) {
    if (!(smoothing > 0.0 && smoothing <= 1.0)) {
        throw ParameterError("Croston smoothing must lie in (0, 1]");
    }
    std::vector<double> out;
    out.reserve(series.size());
    bool started = false;
    double size = 0.0;
    double interval = 1.0;
    int since_last = 0;
    for (double y : series) {
        if (y < 0.0) throw ParameterError("Croston requires nonnegative demand");
        ++since_last;
        if (y > 0.0) {
            if (!started) {
                size = y;
                interval = since_last;
                started = true;
            } else {
                size += smoothing * (y - size);
                interval += smoothing * (since_last - interval);
            }
            since_last = 0;
        }
        out.push_back(started ? size / interval : 0.0);
    }
    return out;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.n_series < 1) throw ParameterError("n_series must be >= 1");
    if (cfg.window < 1) throw ParameterError("window must be >= 1");
    if (cfg.first_period != cfg.window + 1) {
        throw ParameterError("simulated periods must start right after the first window");
    }
    if (cfg.last_period < cfg.first_period) throw ParameterError("empty simulation range");
    if (!(cfg.period_length > 0.0)) throw ParameterError("period_length must be > 0");
    validate(cfg.policy);
    validate(cfg.costs);
}

std::vector<double> rolling_forecast(std::span<const double> series, const ExperimentConfig& cfg) {
    if (cfg.window < 1 || cfg.first_period <= cfg.window || cfg.last_period < cfg.first_period) {
        throw ParameterError("invalid rolling forecast range");
    }
    if (series.size() < static_cast<std::size_t>(cfg.last_period) - 1) {
        throw ParameterError("series shorter than window plus forecast periods");
    }
    const auto window = static_cast<std::size_t>(cfg.window);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(cfg.sim_periods()));
    for (int k = cfg.first_period; k <= cfg.last_period; ++k) {
        // Period k (1-based) is forecast from periods k-window .. k-1.
        const auto end = static_cast<std::size_t>(k - 1);
        const auto hist = series.subspan(end - window, window);
        double mean = 0.0;
        for (double v : hist) mean += v;
        mean /= static_cast<double>(window);
        const double hi = *std::max_element(hist.begin(), hist.end());

        double f = mean;
        switch (cfg.forecaster) {
            case Forecaster::arima:
                try {
                    f = forecast_next(fit_arima(hist, cfg.search), hist);
                } catch (const std::invalid_argument&) {
                    f = mean;
                }
                if (!std::isfinite(f)) f = mean;
                break;
            case Forecaster::croston:
                f = croston_forecast(hist, cfg.croston_smoothing).back();
                break;
            case Forecaster::window_mean:
                break;
        }
        out.push_back(std::clamp(f, 0.0, hi));
    }
    return out;
}

DiscreteRun reorder_sim_discrete(std::span<const double> actuals, std::span<const double> forecasts,
                                 const PolicyParams& policy, const CostParams& costs,
                                 ReorderTrigger trigger) {
    if (actuals.size() != forecasts.size()) {
        throw ParameterError("actuals and forecasts must have the same length");
    }
    validate(policy);
    validate(costs);
    const double reorder_point = policy.reorder_point();
    DiscreteRun run;
    run.end_inventory.reserve(actuals.size());
    run.cumulative_total.reserve(actuals.size());
    double inventory = policy.x0;
    double ordering = 0.0, holding = 0.0, shortage = 0.0;
    for (std::size_t k = 0; k < actuals.size(); ++k) {
        const double position =
            trigger == ReorderTrigger::forecast_projected ? inventory - forecasts[k] : inventory;
        if (position <= reorder_point) {
            inventory += policy.Q;
            ordering += costs.order_cost(policy.Q);
            ++run.orders;
        }
        inventory -= actuals[k];
        holding += costs.c_h * std::max(inventory, 0.0);
        shortage += costs.c_so * std::max(-inventory, 0.0);
        if (inventory < 0.0) ++run.stockout_periods;
        run.end_inventory.push_back(inventory);
        run.cumulative_total.push_back(ordering + holding + shortage);
    }
    run.cost = make_breakdown(static_cast<double>(actuals.size()), ordering, holding, shortage);
    return run;
}

ExperimentData prepare_experiment(const ProcessParams& params, const ExperimentConfig& cfg) {
    validate(params);
    validate(cfg);
    ExperimentData data;
    data.series.resize(cfg.n_series);
    data.actuals.resize(cfg.n_series);
    data.forecasts.resize(cfg.n_series);
    const double horizon = cfg.period_length * cfg.last_period;
    const auto first = static_cast<std::size_t>(cfg.first_period - 1);
    const auto count = static_cast<std::size_t>(cfg.sim_periods());
    parallel_for(cfg.n_series, [&](std::size_t i) {
        const SamplePath path = sample_path(params, horizon, cfg.base_seed + i);
        auto series = period_increments(path, cfg.period_length);
        series.resize(static_cast<std::size_t>(cfg.last_period));
        data.forecasts[i] = rolling_forecast(series, cfg);
        data.actuals[i].assign(series.begin() + first, series.begin() + first + count);
        data.series[i] = std::move(series);
    });
    return data;
}

std::vector<TableSpec> table1_grid() {
    std::vector<TableSpec> grid;
    for (const auto& q_group : {std::array{50.0, 60.0}, std::array{110.0, 120.0}}) {
        for (double R : {40.0, 50.0, 60.0}) {
            for (double Q : q_group) {
                for (double c_so : {10.0, 15.0}) {
                    for (double c_o : {5.0, 10.0}) grid.push_back({R, Q, 1.0, c_o, c_so});
                }
            }
        }
    }
    return grid;
}

std::vector<TableRow> run_table_experiment(const ProcessParams& params,
                                           const ExperimentConfig& cfg,
                                           std::span<const TableSpec> grid) {
    return run_table_experiment(prepare_experiment(params, cfg), cfg, grid);
}

std::vector<TableRow> run_table_experiment(const ExperimentData& data, const ExperimentConfig& cfg,
                                           std::span<const TableSpec> grid) {
    std::vector<TableRow> rows;
    rows.reserve(grid.size());
    const std::size_t n = data.actuals.size();
    if (n == 0) throw ParameterError("experiment has no series");
    for (const auto& spec : grid) {
        const PolicyParams policy{cfg.policy.x0, cfg.policy.x0 - spec.R, spec.Q};
        const CostParams costs{spec.c_o, spec.c_h, spec.c_so, cfg.costs.ordering_mode};
        std::vector<double> totals(n), orders(n), stockouts(n);
        parallel_for(n, [&](std::size_t i) {
            const auto run =
                reorder_sim_discrete(data.actuals[i], data.forecasts[i], policy, costs, cfg.trigger);
            totals[i] = run.cost.total;
            orders[i] = static_cast<double>(run.orders);
            stockouts[i] = static_cast<double>(run.stockout_periods) /
                           static_cast<double>(data.actuals[i].size());
        });
        const Stat total = summarize(totals);
        rows.push_back({spec, total.mean, total.se, summarize(orders).mean,
                        summarize(stockouts).mean});
    }
    return rows;
}

std::vector<double> mean_cumulative_cost(const ExperimentData& data, const ExperimentConfig& cfg) {
    if (data.actuals.empty()) throw ParameterError("experiment has no series");
    const std::size_t periods = data.actuals.front().size();
    std::vector<std::vector<double>> per_series(data.actuals.size());
    parallel_for(data.actuals.size(), [&](std::size_t i) {
        per_series[i] = reorder_sim_discrete(data.actuals[i], data.forecasts[i], cfg.policy,
                                             cfg.costs, cfg.trigger)
                            .cumulative_total;
    });
    std::vector<double> mean(periods, 0.0);
    for (const auto& c : per_series) {
        for (std::size_t k = 0; k < periods; ++k) mean[k] += c[k];
    }
    for (double& v : mean) v /= static_cast<double>(per_series.size());
    return mean;
}

}  // namespace invctl
