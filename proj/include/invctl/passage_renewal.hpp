#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "invctl/params.hpp"

namespace invctl {

/// Gamma(shape, rate) stand-in for the n-th first-passage time T_n.
struct GammaSpec {
    double shape = 1.0;
    double rate = 1.0;

    double mean() const { return shape / rate; }
};

void validate(const GammaSpec& spec);

/// Truncation rule for the renewal series sum_{n>=1}.
struct RenewalSeriesConfig {
    double tail_tol = 1e-12;  ///< stop at the first term below this
    long n_max = 10'000;      ///< hard cap; exceeding it throws SeriesNotConverged
};

void validate(const RenewalSeriesConfig& cfg);

/// shape = (a + (n-1)Q) / mu, rate = alpha * lambda.
GammaSpec fpt_gamma_spec(const ProcessParams& params, const PolicyParams& policy, long n);

/// P(T < t) for T ~ Gamma(spec): regularized lower incomplete gamma P(shape, rate*t).
double gamma_cdf(const GammaSpec& spec, double t);

/// Density of Gamma(spec) at s.
double gamma_pdf(const GammaSpec& spec, double s);

/// Diagnostics only. Integral over [0, t] of the literal integrand
/// (rate*s)^{shape-1} / Gamma(shape) * s * exp(-rate*s), which carries an
/// extra factor s and lacks the factor rate compared with the gamma density.
/// It is not a CDF and does not tend to 1.
double paper_literal_cdf(const GammaSpec& spec, double t);

/// E[T * 1{T < t}] = (shape/rate) * P(shape + 1, rate*t).
double truncated_mean(const GammaSpec& spec, double t);

/// E[R_t] = sum_n P(T_n < t) under the gamma approximation.
double expected_renewals(const ProcessParams& params, const PolicyParams& policy, double t,
                         const RenewalSeriesConfig& cfg = {});

/// E[int_0^t R_s ds] = sum_n (t P(T_n < t) - E[T_n 1{T_n < t}]).
double expected_integrated_renewals(const ProcessParams& params, const PolicyParams& policy,
                                    double t, const RenewalSeriesConfig& cfg = {});

/// Exact first time the simulated demand path reaches `level` (D_s >= level).
/// Simulated with no horizon limit; always finite because mu > 0.
double sample_first_passage(const ProcessParams& params, double level, std::uint64_t seed);

/// Sorted exact FPT samples to level a + (n-1)Q, path i seeded with seed + i.
std::vector<double> fpt_samples(const ProcessParams& params, const PolicyParams& policy, long n,
                                std::size_t n_paths, std::uint64_t seed);

/// Empirical P(T_n <= t) at each grid point from exact simulated passage times.
std::vector<double> fpt_empirical_cdf(const ProcessParams& params, const PolicyParams& policy,
                                      long n, std::span<const double> t_grid,
                                      std::size_t n_paths, std::uint64_t seed);

/// Kolmogorov-Smirnov distance sup_t |F_emp(t) - gamma_cdf(spec, t)| over a sorted sample.
double ks_distance_to_gamma(std::span<const double> sorted_sample, const GammaSpec& spec);

/// Two-sample Kolmogorov-Smirnov distance between two sorted samples.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace invctl
