#pragma once

#include <string>
#include <string_view>

namespace invctl {

/// Drifted Poisson demand D_t = mu*t + alpha*N_t, N a Poisson process of rate lambda.
struct ProcessParams {
    double mu = 5.0;      ///< demand units per unit time (drift)
    double alpha = 10.0;  ///< demand units per jump
    double lambda = 1.0;  ///< jumps per unit time

    double mean_rate() const { return mu + alpha * lambda; }
};

/// Threshold replenishment policy. Orders of size Q are placed each time
/// cumulative demand reaches a + (n-1)Q, i.e. whenever inventory drops to
/// the reorder point x0 - a.
struct PolicyParams {
    double x0 = 100.0;
    double a = 50.0;
    double Q = 50.0;

    double reorder_point() const { return x0 - a; }
    /// Demand level at which the n-th order (n >= 1) fires.
    double threshold(long n) const { return a + static_cast<double>(n - 1) * Q; }
};

enum class OrderingMode {
    per_unit_times_Q,  ///< each order costs c_o * Q
    per_order,         ///< each order costs c_o
};

std::string_view to_string(OrderingMode mode);
/// Throws ParameterError on unknown names.
OrderingMode parse_ordering_mode(std::string_view name);

struct CostParams {
    double c_o = 5.0;   ///< ordering cost
    double c_h = 1.0;   ///< holding cost per unit per unit time
    double c_so = 10.0; ///< shortage cost per unit per unit time
    OrderingMode ordering_mode = OrderingMode::per_unit_times_Q;

    /// Cost charged for one order of the given size.
    double order_cost(double Q) const {
        return ordering_mode == OrderingMode::per_unit_times_Q ? c_o * Q : c_o;
    }
};

void validate(const ProcessParams& p);
void validate(const PolicyParams& p);
void validate(const CostParams& c);

/// True when c_h <= c_o <= c_so. Violations are allowed but worth a warning.
bool cost_ordering_is_conventional(const CostParams& c);

}  // namespace invctl
