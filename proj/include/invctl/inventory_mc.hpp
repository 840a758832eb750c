#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "invctl/cost_engine.hpp"
#include "invctl/params.hpp"

namespace invctl {

enum class EventKind { jump, order };

struct InventoryEvent {
    double t;
    EventKind kind;
    double inventory_after;
};

/// Event log of the controlled inventory X_t = x0 - D_t + Q R_t on [0, horizon].
///
/// Between events inventory falls with slope -mu. A jump lowers it by alpha;
/// each order raises it by Q. When a jump crosses several thresholds the
/// jump event is followed by one order event per threshold, all at the jump
/// time.
struct Trajectory {
    std::vector<InventoryEvent> events;
    PolicyParams policy;
    ProcessParams params;
    double horizon = 0.0;
    std::uint64_t seed = 0;

    long jumps_until(double t) const;
    long orders_until(double t) const;
    double demand_at(double t) const;
    double inventory_at(double t) const;
    /// int_0^t R_s ds.
    double integrated_orders(double t) const;
    /// int_0^t X_s ds (signed).
    double inventory_integral(double t) const;
    /// int_0^t max(X_s, 0) ds and int_0^t max(-X_s, 0) ds.
    std::pair<double, double> positive_negative_integrals(double t) const;
    bool ever_negative(double t) const;
};

/// Exact event-driven simulation. Drift crossings are solved in closed form,
/// jump crossings fire orders at the jump instant.
Trajectory simulate(const ProcessParams& params, const PolicyParams& policy, double horizon,
                    std::uint64_t seed);

/// Realized cost over [0, t] (t defaults to the horizon): ordering per
/// ordering mode times order count, holding on max(X,0), shortage on max(-X,0),
/// integrals exact per linear segment.
CostBreakdown realized_cost(const Trajectory& traj, const CostParams& costs);
CostBreakdown realized_cost(const Trajectory& traj, const CostParams& costs, double t);

struct Stat {
    double mean = 0.0;
    double se = 0.0;  ///< standard error of the mean
};

/// Sample mean and standard error of the mean, summed in index order.
Stat summarize(std::span<const double> values);

/// Monte Carlo estimates at one time point.
struct TimeEstimate {
    double t = 0.0;
    Stat orders;              ///< R_t
    Stat inventory;           ///< X_t
    Stat integrated_orders;   ///< int R_s ds
    Stat inventory_integral;  ///< int X_s ds, signed
    Stat ordering;
    Stat holding;   ///< c_h int max(X,0)
    Stat shortage;  ///< c_so int max(-X,0)
    Stat total;     ///< realized cost
    Stat signed_total;  ///< ordering + c_h int X ds, the analog of the closed form
    double shortage_fraction = 0.0;  ///< fraction of paths negative at some s <= t
};

struct McOptions {
    std::size_t n_paths = 100'000;
    std::uint64_t base_seed = 1;
    /// Path i uses seed base_seed + i * seed_stride. Stride 0 replays one path.
    std::uint64_t seed_stride = 1;
};

/// Simulates n_paths trajectories up to max(times) and estimates every
/// quantity at each requested time. Deterministic given the options.
std::vector<TimeEstimate> mc_estimates(const ProcessParams& params, const PolicyParams& policy,
                                       const CostParams& costs, std::span<const double> times,
                                       const McOptions& opts);

struct SimSummary {
    std::size_t n_paths = 0;
    double horizon = 0.0;
    double mean_total = 0.0;
    double stderr_total = 0.0;
    Stat ordering;
    Stat holding;
    Stat shortage;
    double mean_orders = 0.0;
    double stderr_orders = 0.0;
    double shortage_fraction = 0.0;
};

/// Aggregate realized cost at the horizon over n_paths >= 2 paths.
SimSummary mc_summary(const ProcessParams& params, const PolicyParams& policy,
                      const CostParams& costs, double horizon, std::size_t n_paths,
                      std::uint64_t base_seed, std::uint64_t seed_stride = 1);

/// CSV `t,kind,inventory`.
std::string trajectory_to_csv(const Trajectory& traj);
/// JSON object with every SimSummary field.
std::string summary_to_json(const SimSummary& s);

}  // namespace invctl
