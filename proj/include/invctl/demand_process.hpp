#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invctl/params.hpp"

namespace invctl {

/// One realization of the cumulative demand process on [0, horizon).
/// Immutable after construction; safe to share across threads.
class SamplePath {
public:
    /// Takes explicit jump times; they must be strictly increasing and in [0, horizon).
    SamplePath(ProcessParams params, std::vector<double> jump_times, double horizon,
               std::uint64_t seed = 0);

    const ProcessParams& params() const { return params_; }
    const std::vector<double>& jump_times() const { return jump_times_; }
    double horizon() const { return horizon_; }
    std::uint64_t seed() const { return seed_; }

    /// Number of jumps at times <= t (right-continuous).
    long jumps_until(double t) const;

private:
    ProcessParams params_;
    std::vector<double> jump_times_;
    double horizon_;
    std::uint64_t seed_;
};

/// Exact sample via exponential(lambda) inter-arrival times. Bit-reproducible
/// for a given (params, horizon, seed).
SamplePath sample_path(const ProcessParams& params, double horizon, std::uint64_t seed);

/// D_t = mu*t + alpha*#{jumps <= t}. Throws DomainError for t outside [0, horizon].
double demand_at(const SamplePath& path, double t);

/// Demand per period: element k is D_{(k+1)p} - D_{kp} for every whole
/// period that fits in the horizon.
std::vector<double> period_increments(const SamplePath& path, double period);

/// CSV with header `t,jump`: one row per jump time, jump column is the jump size.
std::string path_to_csv(const SamplePath& path);
/// JSON sidecar holding the parameters, horizon and seed of a path.
std::string path_sidecar_json(const SamplePath& path);

}  // namespace invctl
