#include "invctl/passage_renewal.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "invctl/errors.hpp"
#include "invctl/parallel.hpp"
#include "invctl/rng.hpp"
#include "invctl/special.hpp"

namespace invctl {

void validate(const GammaSpec& spec) {
    if (!(spec.shape > 0.0) || !(spec.rate > 0.0) || !std::isfinite(spec.shape) ||
        !std::isfinite(spec.rate)) {
        throw ParameterError("gamma shape and rate must be finite and > 0");
    }
}

void validate(const RenewalSeriesConfig& cfg) {
    if (!(cfg.tail_tol > 0.0 && cfg.tail_tol < 1.0)) {
        throw ParameterError("tail_tol must lie in (0, 1)");
    }
    if (cfg.n_max < 1) throw ParameterError("n_max must be >= 1");
}

GammaSpec fpt_gamma_spec(const ProcessParams& params, const PolicyParams& policy, long n) {
    validate(params);
    if (n < 1) throw ParameterError("passage index n must be >= 1");
    if (!(policy.a > 0.0) || !(policy.Q > 0.0)) {
        throw ParameterError("policy a and Q must be > 0");
    }
    return {policy.threshold(n) / params.mu, params.alpha * params.lambda};
}

namespace {
void check_time(double t) {
    if (!(t >= 0.0) || std::isnan(t)) throw DomainError(fmt::format("time t={} must be >= 0", t));
}
}  // namespace

double gamma_cdf(const GammaSpec& spec, double t) {
    validate(spec);
    check_time(t);
    return special::gamma_p(spec.shape, spec.rate * t);
}

double gamma_pdf(const GammaSpec& spec, double s) {
    validate(spec);
    if (s < 0.0) return 0.0;
    if (s == 0.0) {
        if (spec.shape < 1.0) return HUGE_VAL;
        return spec.shape == 1.0 ? spec.rate : 0.0;
    }
    const double x = spec.rate * s;
    return std::exp((spec.shape - 1.0) * std::log(x) - x - std::lgamma(spec.shape)) * spec.rate;
}

double paper_literal_cdf(const GammaSpec& spec, double t) {
    validate(spec);
    check_time(t);
    if (t == 0.0) return 0.0;
    const double lg = std::lgamma(spec.shape);
    auto integrand = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double x = spec.rate * s;
        return std::exp((spec.shape - 1.0) * std::log(x) - x - lg) * s;
    };
    return special::integrate(integrand, 0.0, t, 1e-13, 1e-12).value;
}

double truncated_mean(const GammaSpec& spec, double t) {
    validate(spec);
    check_time(t);
    return spec.mean() * special::gamma_p(spec.shape + 1.0, spec.rate * t);
}

namespace {

// Sums term(n) for n = 1, 2, ... where gate(n) = P(T_n < t) decides truncation.
template <typename Term>
double renewal_series(const ProcessParams& params, const PolicyParams& policy, double t,
                      const RenewalSeriesConfig& cfg, Term&& term) {
    validate(params);
    validate(policy);
    validate(cfg);
    check_time(t);
    if (t == 0.0) return 0.0;
    double sum = 0.0;
    double cdf = 1.0;
    for (long n = 1; n <= cfg.n_max; ++n) {
        const GammaSpec spec = fpt_gamma_spec(params, policy, n);
        cdf = gamma_cdf(spec, t);
        sum += term(spec, cdf);
        if (cdf < cfg.tail_tol) return sum;
    }
    throw SeriesNotConverged(t, cfg.n_max, cdf, sum);
}

}  // namespace

double expected_renewals(const ProcessParams& params, const PolicyParams& policy, double t,
                         const RenewalSeriesConfig& cfg) {
    return renewal_series(params, policy, t, cfg,
                          [](const GammaSpec&, double cdf) { return cdf; });
}

double expected_integrated_renewals(const ProcessParams& params, const PolicyParams& policy,
                                    double t, const RenewalSeriesConfig& cfg) {
    return renewal_series(params, policy, t, cfg, [t](const GammaSpec& spec, double cdf) {
        // t*P(T<t) - E[T 1{T<t}] = E[(t - T)^+] >= 0; clamp rounding below zero.
        return std::max(0.0, t * cdf - truncated_mean(spec, t));
    });
}

double sample_first_passage(const ProcessParams& params, double level, std::uint64_t seed) {
    validate(params);
    if (level <= 0.0) return 0.0;
    Rng rng(seed);
    double jumps_total = 0.0;  // alpha * N
    double t = 0.0;
    for (;;) {
        const double next_jump = t + rng.exponential(params.lambda);
        // Drift alone reaches the level before the next jump?
        const double drift_hit = (level - jumps_total) / params.mu;
        if (drift_hit <= next_jump) return drift_hit;
        t = next_jump;
        jumps_total += params.alpha;
        if (params.mu * t + jumps_total >= level) return t;
    }
}

std::vector<double> fpt_samples(const ProcessParams& params, const PolicyParams& policy, long n,
                                std::size_t n_paths, std::uint64_t seed) {
    validate(params);
    if (n < 1) throw ParameterError("passage index n must be >= 1");
    if (n_paths < 1) throw ParameterError("n_paths must be >= 1");
    const double level = policy.threshold(n);
    std::vector<double> out(n_paths);
    parallel_for(n_paths, [&](std::size_t i) {
        out[i] = sample_first_passage(params, level, seed + i);
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> fpt_empirical_cdf(const ProcessParams& params, const PolicyParams& policy,
                                      long n, std::span<const double> t_grid,
                                      std::size_t n_paths, std::uint64_t seed) {
    const auto sample = fpt_samples(params, policy, n, n_paths, seed);
    std::vector<double> cdf;
    cdf.reserve(t_grid.size());
    for (double t : t_grid) {
        const auto count = std::upper_bound(sample.begin(), sample.end(), t) - sample.begin();
        cdf.push_back(static_cast<double>(count) / static_cast<double>(sample.size()));
    }
    return cdf;
}

double ks_distance_to_gamma(std::span<const double> sorted_sample, const GammaSpec& spec) {
    const auto n = static_cast<double>(sorted_sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
        const double f = gamma_cdf(spec, std::max(0.0, sorted_sample[i]));
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ParameterError("KS needs two non-empty samples");
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace invctl
