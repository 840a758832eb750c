#include "invctl/cost_engine.hpp"

#include <cmath>

#include "invctl/errors.hpp"
#include "invctl/parallel.hpp"

namespace invctl {

CostBreakdown make_breakdown(double t, double ordering, double holding, double shortage) {
    return {ordering, holding, shortage, ordering + holding + shortage, t};
}

double expected_inventory(const ProcessParams& params, const PolicyParams& policy, double t,
                          const RenewalSeriesConfig& cfg) {
    const double renewals = expected_renewals(params, policy, t, cfg);
    return policy.x0 - params.mean_rate() * t + policy.Q * renewals;
}

CostBreakdown expected_total_cost(const ProcessParams& params, const PolicyParams& policy,
                                  const CostParams& costs, double t,
                                  const RenewalSeriesConfig& cfg) {
    validate(costs);
    const double renewals = expected_renewals(params, policy, t, cfg);
    const double integrated = expected_integrated_renewals(params, policy, t, cfg);
    const double ordering = costs.order_cost(policy.Q) * renewals;
    const double holding = costs.c_h * policy.x0 * t -
                           costs.c_h * 0.5 * t * t * params.mean_rate() +
                           costs.c_h * policy.Q * integrated;
    return make_breakdown(t, ordering, holding, 0.0);
}

namespace {
void check_grid(std::span<const double> grid) {
    if (grid.empty()) throw ParameterError("time grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw ParameterError("time grid must be nonnegative and strictly increasing");
        }
    }
}
}  // namespace

CostCurve cost_curve(const ProcessParams& params, const PolicyParams& policy,
                     const CostParams& costs, std::span<const double> grid,
                     const RenewalSeriesConfig& cfg) {
    check_grid(grid);
    CostCurve curve;
    curve.grid.assign(grid.begin(), grid.end());
    curve.points.resize(grid.size());
    std::vector<char> negative(grid.size(), 0);
    parallel_for(grid.size(), [&](std::size_t i) {
        curve.points[i] = expected_total_cost(params, policy, costs, grid[i], cfg);
        negative[i] = expected_inventory(params, policy, grid[i], cfg) < 0.0;
    });
    curve.negative_inventory.assign(negative.begin(), negative.end());
    return curve;
}

std::pair<double, double> argmax_time(const CostCurve& curve) {
    if (curve.points.empty()) throw ParameterError("argmax of an empty cost curve");
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        if (curve.points[i].total > curve.points[best].total) best = i;
    }
    return {curve.points[best].t, curve.points[best].total};
}

std::vector<SweepRow> sweep(const ProcessParams& params, double x0,
                            std::span<const CostParams> costs_list, std::span<const double> a_list,
                            std::span<const double> Q_list, std::span<const double> grid,
                            const RenewalSeriesConfig& cfg) {
    if (costs_list.empty() || a_list.empty() || Q_list.empty()) {
        throw ParameterError("sweep lists must be non-empty");
    }
    check_grid(grid);
    std::vector<SweepRow> rows;
    rows.reserve(a_list.size() * Q_list.size() * costs_list.size() * grid.size());
    for (double a : a_list) {
        for (double Q : Q_list) {
            const PolicyParams policy{x0, a, Q};
            validate(policy);
            for (const auto& costs : costs_list) {
                rows.insert(rows.end(), grid.size(), SweepRow{policy, costs, {}});
            }
        }
    }
    parallel_for(rows.size(), [&](std::size_t i) {
        auto& row = rows[i];
        row.cost = expected_total_cost(params, row.policy, row.costs,
                                       grid[i % grid.size()], cfg);
    });
    return rows;
}

std::vector<double> linear_grid(double t_start, double t_end, int steps) {
    if (!(t_start >= 0.0) || !(t_end >= t_start)) {
        throw ParameterError("grid requires 0 <= t_start <= t_end");
    }
    if (steps < 1) throw ParameterError("grid needs at least one step");
    if (t_end == t_start) return {t_start};
    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    const double h = (t_end - t_start) / steps;
    for (int i = 0; i <= steps; ++i) grid[static_cast<std::size_t>(i)] = t_start + i * h;
    grid.back() = t_end;
    return grid;
}

}  // namespace invctl
