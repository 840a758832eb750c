#include "invctl/params.hpp"

#include <cmath>

#include "invctl/errors.hpp"

namespace invctl {

std::string_view to_string(OrderingMode mode) {
    switch (mode) {
        case OrderingMode::per_unit_times_Q: return "per_unit_times_Q";
        case OrderingMode::per_order: return "per_order";
    }
    return "unknown";
}

OrderingMode parse_ordering_mode(std::string_view name) {
    if (name == "per_unit_times_Q") return OrderingMode::per_unit_times_Q;
    if (name == "per_order") return OrderingMode::per_order;
    throw ParameterError("unknown ordering mode '" + std::string(name) +
                         "' (expected per_order or per_unit_times_Q)");
}

namespace {
bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }
}  // namespace

void validate(const ProcessParams& p) {
    if (!positive(p.mu) || !positive(p.alpha) || !positive(p.lambda)) {
        throw ParameterError("process parameters mu, alpha, lambda must be finite and > 0");
    }
}

void validate(const PolicyParams& p) {
    if (!positive(p.x0)) throw ParameterError("initial inventory x0 must be > 0");
    if (!positive(p.Q)) throw ParameterError("order quantity Q must be > 0");
    if (!positive(p.a) || !(p.a < p.x0)) {
        throw ParameterError("drawdown a must satisfy 0 < a < x0 (reorder point x0 - a > 0)");
    }
}

void validate(const CostParams& c) {
    if (!nonnegative(c.c_o) || !nonnegative(c.c_h) || !nonnegative(c.c_so)) {
        throw ParameterError("cost coefficients must be finite and >= 0");
    }
}

bool cost_ordering_is_conventional(const CostParams& c) {
    return c.c_h <= c.c_o && c.c_o <= c.c_so;
}

}  // namespace invctl
