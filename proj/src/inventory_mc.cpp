#include "invctl/inventory_mc.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include "json.hpp"

#include "invctl/demand_process.hpp"
#include "invctl/errors.hpp"
#include "invctl/parallel.hpp"

namespace invctl {

namespace {

void check_query(const Trajectory& traj, double t) {
    if (!(t >= 0.0) || t > traj.horizon) {
        throw DomainError(fmt::format("t={} outside trajectory horizon [0, {}]", t, traj.horizon));
    }
}

template <typename Fn>
void for_each_segment(const Trajectory& traj, double t, Fn&& fn) {
    // Segments [s0, s1) with inventory v0 just after s0 and slope -mu.
    double s0 = 0.0;
    for (const auto& e : traj.events) {
        if (e.t > t) break;
        if (e.t > s0) {
            fn(s0, e.t, traj.inventory_at(s0));
            s0 = e.t;
        }
    }
    if (t > s0) fn(s0, t, traj.inventory_at(s0));
}

}  // namespace

long Trajectory::jumps_until(double t) const {
    return std::count_if(events.begin(), events.end(), [t](const InventoryEvent& e) {
        return e.kind == EventKind::jump && e.t <= t;
    });
}

long Trajectory::orders_until(double t) const {
    return std::count_if(events.begin(), events.end(), [t](const InventoryEvent& e) {
        return e.kind == EventKind::order && e.t <= t;
    });
}

double Trajectory::demand_at(double t) const {
    check_query(*this, t);
    return params.mu * t + params.alpha * static_cast<double>(jumps_until(t));
}

double Trajectory::inventory_at(double t) const {
    return policy.x0 - demand_at(t) + policy.Q * static_cast<double>(orders_until(t));
}

double Trajectory::integrated_orders(double t) const {
    check_query(*this, t);
    double sum = 0.0;
    for (const auto& e : events) {
        if (e.t > t) break;
        if (e.kind == EventKind::order) sum += t - e.t;
    }
    return sum;
}

std::pair<double, double> Trajectory::positive_negative_integrals(double t) const {
    check_query(*this, t);
    const double mu = params.mu;
    double pos = 0.0;
    double neg = 0.0;
    for_each_segment(*this, t, [&](double s0, double s1, double v0) {
        const double v1 = v0 - mu * (s1 - s0);
        if (v1 >= 0.0) {
            pos += 0.5 * (v0 + v1) * (s1 - s0);
        } else if (v0 <= 0.0) {
            neg += -0.5 * (v0 + v1) * (s1 - s0);
        } else {
            // Crosses zero at s0 + v0/mu.
            pos += 0.5 * v0 * v0 / mu;
            neg += 0.5 * v1 * v1 / mu;
        }
    });
    return {pos, neg};
}

double Trajectory::inventory_integral(double t) const {
    const auto [pos, neg] = positive_negative_integrals(t);
    return pos - neg;
}

bool Trajectory::ever_negative(double t) const {
    check_query(*this, t);
    bool negative = false;
    for_each_segment(*this, t, [&](double s0, double s1, double v0) {
        if (v0 < 0.0 || v0 - params.mu * (s1 - s0) < 0.0) negative = true;
    });
    return negative;
}

Trajectory simulate(const ProcessParams& params, const PolicyParams& policy, double horizon,
                    std::uint64_t seed) {
    validate(policy);
    const SamplePath path = sample_path(params, horizon, seed);

    Trajectory traj;
    traj.params = params;
    traj.policy = policy;
    traj.horizon = horizon;
    traj.seed = seed;

    long jumps = 0;
    long orders = 0;
    auto inventory = [&](double t) {
        return policy.x0 - params.mu * t - params.alpha * static_cast<double>(jumps) +
               policy.Q * static_cast<double>(orders);
    };
    // Fire every order whose threshold the drift reaches at or before `until`.
    auto drift_orders = [&](double until) {
        for (;;) {
            const double hit =
                (policy.threshold(orders + 1) - params.alpha * static_cast<double>(jumps)) /
                params.mu;
            if (hit > until) return;
            ++orders;
            traj.events.push_back({hit, EventKind::order, inventory(hit)});
        }
    };

    for (double tj : path.jump_times()) {
        drift_orders(tj);
        ++jumps;
        traj.events.push_back({tj, EventKind::jump, inventory(tj)});
        const double demand = params.mu * tj + params.alpha * static_cast<double>(jumps);
        while (demand >= policy.threshold(orders + 1)) {
            ++orders;
            traj.events.push_back({tj, EventKind::order, inventory(tj)});
        }
    }
    drift_orders(horizon);
    return traj;
}

CostBreakdown realized_cost(const Trajectory& traj, const CostParams& costs) {
    return realized_cost(traj, costs, traj.horizon);
}

CostBreakdown realized_cost(const Trajectory& traj, const CostParams& costs, double t) {
    validate(costs);
    const auto [pos, neg] = traj.positive_negative_integrals(t);
    const double ordering =
        costs.order_cost(traj.policy.Q) * static_cast<double>(traj.orders_until(t));
    return make_breakdown(t, ordering, costs.c_h * pos, costs.c_so * neg);
}

Stat summarize(std::span<const double> values) {
    if (values.empty()) return {};
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

std::vector<TimeEstimate> mc_estimates(const ProcessParams& params, const PolicyParams& policy,
                                       const CostParams& costs, std::span<const double> times,
                                       const McOptions& opts) {
    validate(params);
    validate(policy);
    validate(costs);
    if (times.empty()) throw ParameterError("mc_estimates needs at least one time");
    if (opts.n_paths < 2) throw ParameterError("n_paths must be >= 2 for a standard error");
    double horizon = 0.0;
    for (double t : times) {
        if (!(t > 0.0)) throw ParameterError("estimate times must be > 0");
        horizon = std::max(horizon, t);
    }

    constexpr std::size_t kFields = 10;
    const std::size_t n = opts.n_paths;
    const std::size_t m = times.size();
    // values[(field * m + time) * n + path]
    std::vector<double> values(kFields * m * n);
    parallel_for(n, [&](std::size_t i) {
        const Trajectory traj =
            simulate(params, policy, horizon, opts.base_seed + i * opts.seed_stride);
        for (std::size_t k = 0; k < m; ++k) {
            const double t = times[k];
            const auto [pos, neg] = traj.positive_negative_integrals(t);
            const double orders = static_cast<double>(traj.orders_until(t));
            const double ordering = costs.order_cost(policy.Q) * orders;
            const double fields[kFields] = {
                orders,
                traj.inventory_at(t),
                traj.integrated_orders(t),
                pos - neg,
                ordering,
                costs.c_h * pos,
                costs.c_so * neg,
                ordering + costs.c_h * pos + costs.c_so * neg,
                ordering + costs.c_h * (pos - neg),
                traj.ever_negative(t) ? 1.0 : 0.0,
            };
            for (std::size_t f = 0; f < kFields; ++f) values[(f * m + k) * n + i] = fields[f];
        }
    });

    std::vector<TimeEstimate> out(m);
    for (std::size_t k = 0; k < m; ++k) {
        auto field = [&](std::size_t f) {
            return summarize(std::span<const double>(values).subspan((f * m + k) * n, n));
        };
        auto& e = out[k];
        e.t = times[k];
        e.orders = field(0);
        e.inventory = field(1);
        e.integrated_orders = field(2);
        e.inventory_integral = field(3);
        e.ordering = field(4);
        e.holding = field(5);
        e.shortage = field(6);
        e.total = field(7);
        e.signed_total = field(8);
        e.shortage_fraction = field(9).mean;
    }
    return out;
}

SimSummary mc_summary(const ProcessParams& params, const PolicyParams& policy,
                      const CostParams& costs, double horizon, std::size_t n_paths,
                      std::uint64_t base_seed, std::uint64_t seed_stride) {
    if (n_paths < 2) throw ParameterError("n_paths must be >= 2 for a standard error");
    if (!(horizon > 0.0)) throw ParameterError("horizon must be > 0");
    const double times[] = {horizon};
    const auto est = mc_estimates(params, policy, costs, times,
                                  McOptions{n_paths, base_seed, seed_stride})
                         .front();
    SimSummary s;
    s.n_paths = n_paths;
    s.horizon = horizon;
    s.mean_total = est.total.mean;
    s.stderr_total = est.total.se;
    s.ordering = est.ordering;
    s.holding = est.holding;
    s.shortage = est.shortage;
    s.mean_orders = est.orders.mean;
    s.stderr_orders = est.orders.se;
    s.shortage_fraction = est.shortage_fraction;
    return s;
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::string out = "t,kind,inventory\n";
    for (const auto& e : traj.events) {
        out += fmt::format("{:.12g},{},{:.12g}\n", e.t,
                           e.kind == EventKind::jump ? "jump" : "order", e.inventory_after);
    }
    return out;
}

std::string summary_to_json(const SimSummary& s) {
    nlohmann::ordered_json j;
    j["n_paths"] = s.n_paths;
    j["horizon"] = s.horizon;
    j["mean_total"] = s.mean_total;
    j["stderr_total"] = s.stderr_total;
    j["mean_ordering"] = s.ordering.mean;
    j["stderr_ordering"] = s.ordering.se;
    j["mean_holding"] = s.holding.mean;
    j["stderr_holding"] = s.holding.se;
    j["mean_shortage"] = s.shortage.mean;
    j["stderr_shortage"] = s.shortage.se;
    j["mean_orders"] = s.mean_orders;
    j["stderr_orders"] = s.stderr_orders;
    j["shortage_fraction"] = s.shortage_fraction;
    return j.dump(2) + "\n";
}

}  // namespace invctl
