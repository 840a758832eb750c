#include "doctest.h"

#include <cmath>
#include <vector>

#include "invctl/demand_process.hpp"
#include "invctl/errors.hpp"
#include "invctl/inventory_mc.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace invctl;

namespace {
const ProcessParams kRef{5.0, 10.0, 1.0};
const PolicyParams kPolicy{100.0, 50.0, 50.0};
const CostParams kCosts{5.0, 1.0, 10.0, OrderingMode::per_unit_times_Q};

std::vector<double> order_times(const Trajectory& traj) {
    std::vector<double> out;
    for (const auto& e : traj.events) {
        if (e.kind == EventKind::order) out.push_back(e.t);
    }
    return out;
}
}  // namespace

TEST_CASE("drift-only demand orders every Q/mu time units") {
    const ProcessParams still{5.0, 10.0, 1e-12};
    const auto traj = simulate(still, kPolicy, 45.0, 7);
    CHECK(order_times(traj) == std::vector<double>{10.0, 20.0, 30.0, 40.0});
    CHECK(traj.orders_until(9.999) == 0);
    CHECK(traj.orders_until(10.0) == 1);

    // Holding on a single linear segment: 100 t - 2.5 t^2.
    const auto c = realized_cost(simulate(still, kPolicy, 8.0, 1), {5.0, 1.0, 10.0});
    CHECK(c.holding == doctest::Approx(100.0 * 8.0 - 2.5 * 64.0).epsilon(1e-13));
    CHECK(c.shortage == 0.0);
    CHECK(c.ordering == 0.0);
}

TEST_CASE("event log reproduces X_t = x - D_t + Q R_t") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto traj = simulate(kRef, kPolicy, 20.0, seed);
        const auto path = sample_path(kRef, 20.0, seed);
        long orders = 0;
        double prev_t = 0.0;
        for (const auto& e : traj.events) {
            REQUIRE(e.t >= prev_t);
            prev_t = e.t;
            if (e.kind == EventKind::order) ++orders;
            const double expected = kPolicy.x0 - demand_at(path, e.t) + kPolicy.Q * orders;
            REQUIRE(e.inventory_after == doctest::Approx(expected).epsilon(1e-12));
        }
        // R_t counts thresholds reached by D_t.
        for (double t : {0.0, 3.3, 10.0, 20.0}) {
            const double d = demand_at(path, t);
            const long thresholds = d < kPolicy.a ? 0 : static_cast<long>(std::floor((d - kPolicy.a) / kPolicy.Q)) + 1;
            REQUIRE(traj.orders_until(t) == thresholds);
        }
    }
}

TEST_CASE("one jump may fire several orders") {
    // alpha = 2Q: once demand is past a, each jump crosses exactly two thresholds.
    const PolicyParams small_q{100.0, 50.0, 5.0};
    const auto traj = simulate(kRef, small_q, 10.0, 3);
    long checked = 0;
    for (std::size_t i = 0; i < traj.events.size(); ++i) {
        const auto& e = traj.events[i];
        if (e.kind != EventKind::jump || traj.demand_at(e.t) - kRef.alpha < small_q.a) continue;
        long at_jump = 0;
        for (std::size_t k = i + 1; k < traj.events.size() && traj.events[k].t == e.t; ++k) ++at_jump;
        CHECK(at_jump == 2);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("realized cost pieces") {
    const auto traj = simulate(kRef, kPolicy, 10.0, 11);
    const auto c = realized_cost(traj, kCosts);
    CHECK(c.total == c.ordering + c.holding + c.shortage);
    CHECK(c.ordering == kCosts.c_o * kPolicy.Q * traj.orders_until(10.0));
    CostParams per_order = kCosts;
    per_order.ordering_mode = OrderingMode::per_order;
    CHECK(realized_cost(traj, per_order).ordering * kPolicy.Q == c.ordering);

    // Integrals on a hand-built log: no events, X_s = 10 - 5 s crosses zero at s = 2.
    Trajectory bare;
    bare.params = kRef;
    bare.policy = {10.0, 5.0, 1.0};
    bare.horizon = 4.0;
    const auto [pos, neg] = bare.positive_negative_integrals(4.0);
    CHECK(pos == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(neg == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(bare.inventory_integral(4.0) == doctest::Approx(0.0));
    CHECK(bare.ever_negative(4.0));
    CHECK_FALSE(bare.ever_negative(1.9));
    const auto cost = realized_cost(bare, {5.0, 1.0, 10.0});
    CHECK(cost.holding == doctest::Approx(10.0));
    CHECK(cost.shortage == doctest::Approx(100.0));
    CHECK_THROWS_AS(traj.inventory_at(10.5), DomainError);
}

TEST_CASE("Monte Carlo means agree with the exact renewal oracle") {
    const double times[] = {2.0, 5.0, 10.0};
    const auto est = mc_estimates(kRef, kPolicy, kCosts, times, {100'000, 4242, 1});
    for (const auto& e : est) {
        CAPTURE(e.t);
        const double r = oracle::exact_expected_renewals(5, 10, 1, 50, 50, e.t);
        CHECK(std::fabs(e.orders.mean - r) <= 3.0 * e.orders.se);
        const double x = 100.0 - 15.0 * e.t + 50.0 * r;
        CHECK(std::fabs(e.inventory.mean - x) <= 3.0 * e.inventory.se);
        const double ir = oracle::quad(
            [](double s) { return oracle::exact_expected_renewals(5, 10, 1, 50, 50, s); }, 0.0, e.t);
        CHECK(std::fabs(e.integrated_orders.mean - ir) <= 3.0 * e.integrated_orders.se + 1e-6);
        CHECK(e.total.mean == doctest::Approx(e.ordering.mean + e.holding.mean + e.shortage.mean));
    }
}

TEST_CASE("mc_summary") {
    const auto a = mc_summary(kRef, kPolicy, kCosts, 10.0, 5000, 17);
    const auto b = mc_summary(kRef, kPolicy, kCosts, 10.0, 5000, 17);
    CHECK(summary_to_json(a) == summary_to_json(b));
    CHECK(a.stderr_total > 0.0);
    // Threshold replenishment never lets inventory fall below x0 - a.
    CHECK(a.shortage_fraction == 0.0);
    CHECK(a.shortage.mean == 0.0);

    double orders = 0.0;
    for (std::uint64_t i = 0; i < 5000; ++i) orders += simulate(kRef, kPolicy, 10.0, 17 + i).orders_until(10.0);
    CHECK(a.mean_orders == doctest::Approx(orders / 5000.0).epsilon(1e-14));

    const auto same = mc_summary(kRef, kPolicy, kCosts, 10.0, 2, 5, 0);
    CHECK(same.stderr_total == 0.0);
    CHECK_THROWS_AS(mc_summary(kRef, kPolicy, kCosts, 10.0, 1, 5), ParameterError);

    const auto j = nlohmann::json::parse(summary_to_json(a));
    for (const char* key : {"n_paths", "mean_total", "stderr_total", "mean_ordering", "mean_holding",
                            "mean_shortage", "mean_orders", "shortage_fraction"}) {
        CHECK(j.contains(key));
    }
}

TEST_CASE("threshold replenishment keeps inventory at or above x0 - a") {
    // X_t = x0 - D_t + Q R_t and Q R_t >= D_t - a once the first threshold is reached.
    for (const PolicyParams policy : {PolicyParams{30.0, 29.0, 5.0}, PolicyParams{100.0, 90.0, 3.0},
                                      PolicyParams{100.0, 50.0, 120.0}}) {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const auto traj = simulate(kRef, policy, 15.0, seed);
            // State after the last event at each instant.
            for (std::size_t i = 0; i < traj.events.size(); ++i) {
                const bool last = i + 1 == traj.events.size() || traj.events[i + 1].t != traj.events[i].t;
                if (last) REQUIRE(traj.events[i].inventory_after >= policy.x0 - policy.a - 1e-9);
            }
            REQUIRE_FALSE(traj.ever_negative(15.0));
        }
        const auto s = mc_summary(kRef, policy, kCosts, 10.0, 500, 1);
        CHECK(s.shortage_fraction == 0.0);
    }
}

TEST_CASE("trajectory csv") {
    const auto traj = simulate(kRef, kPolicy, 10.0, 2);
    const auto csv = trajectory_to_csv(traj);
    CHECK(csv.rfind("t,kind,inventory\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(traj.events.size()) + 1);
}
