#pragma once

#include <stdexcept>
#include <string>

namespace invctl {

/// Invalid model, policy or configuration parameter.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a function (negative time, t past horizon).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Renewal series hit its term cap before the tail dropped below tolerance.
/// Carries the partial sum so callers can still inspect it.
class SeriesNotConverged : public std::runtime_error {
public:
    SeriesNotConverged(double t, long terms, double last_term, double partial_sum)
        : std::runtime_error("renewal series not converged at t=" + std::to_string(t) +
                             " after " + std::to_string(terms) + " terms (last term " +
                             std::to_string(last_term) + ")"),
          t_(t), terms_(terms), last_term_(last_term), partial_sum_(partial_sum) {}

    double t() const noexcept { return t_; }
    long terms() const noexcept { return terms_; }
    double last_term() const noexcept { return last_term_; }
    double partial_sum() const noexcept { return partial_sum_; }

private:
    double t_;
    long terms_;
    double last_term_;
    double partial_sum_;
};

/// Not enough observations for the requested model order.
class InsufficientData : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace invctl
