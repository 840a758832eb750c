#pragma once

#include <span>
#include <utility>
#include <vector>

#include "invctl/params.hpp"
#include "invctl/passage_renewal.hpp"

namespace invctl {

/// Cost components at a single time t. total == ordering + holding + shortage.
struct CostBreakdown {
    double ordering = 0.0;
    double holding = 0.0;
    double shortage = 0.0;
    double total = 0.0;
    double t = 0.0;
};

CostBreakdown make_breakdown(double t, double ordering, double holding, double shortage);

struct CostCurve {
    std::vector<double> grid;
    std::vector<CostBreakdown> points;
    /// Grid points where the expected inventory went negative. At such times
    /// the zero-shortage approximation no longer describes the model.
    std::vector<bool> negative_inventory;
};

/// E[X_t] = x0 - (mu + alpha*lambda) t + Q E[R_t].
double expected_inventory(const ProcessParams& params, const PolicyParams& policy, double t,
                          const RenewalSeriesConfig& cfg = {});

/// Closed-form expected total cost at time t with the shortage term taken as 0:
///   ordering = c_o Q E[R_t]   (c_o E[R_t] in per_order mode)
///   holding  = c_h x0 t - c_h (t^2/2)(mu + alpha*lambda) + c_h Q E[int_0^t R_s ds]
CostBreakdown expected_total_cost(const ProcessParams& params, const PolicyParams& policy,
                                  const CostParams& costs, double t,
                                  const RenewalSeriesConfig& cfg = {});

/// Pointwise expected_total_cost over a strictly increasing, nonnegative grid.
CostCurve cost_curve(const ProcessParams& params, const PolicyParams& policy,
                     const CostParams& costs, std::span<const double> grid,
                     const RenewalSeriesConfig& cfg = {});

/// Grid point with the largest total; ties go to the earliest time.
std::pair<double, double> argmax_time(const CostCurve& curve);

struct SweepRow {
    PolicyParams policy;
    CostParams costs;
    CostBreakdown cost;  ///< cost.t is the evaluation time
};

/// Full cross product a x Q x costs x grid, rows in that lexicographic order.
std::vector<SweepRow> sweep(const ProcessParams& params, double x0,
                            std::span<const CostParams> costs_list, std::span<const double> a_list,
                            std::span<const double> Q_list, std::span<const double> grid,
                            const RenewalSeriesConfig& cfg = {});

/// Evenly spaced grid t_start, ..., t_end with `steps` intervals; a single
/// point when t_start == t_end.
std::vector<double> linear_grid(double t_start, double t_end, int steps);

}  // namespace invctl
