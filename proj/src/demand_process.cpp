#include "invctl/demand_process.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>
#include "json.hpp"

#include "invctl/errors.hpp"
#include "invctl/rng.hpp"

namespace invctl {

SamplePath::SamplePath(ProcessParams params, std::vector<double> jump_times, double horizon,
                       std::uint64_t seed)
    : params_(params), jump_times_(std::move(jump_times)), horizon_(horizon), seed_(seed) {
    validate(params_);
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
        throw ParameterError("path horizon must be finite and > 0");
    }
    for (std::size_t i = 0; i < jump_times_.size(); ++i) {
        const double t = jump_times_[i];
        if (!(t >= 0.0) || !(t < horizon_) || (i > 0 && !(t > jump_times_[i - 1]))) {
            throw ParameterError("jump times must be strictly increasing within [0, horizon)");
        }
    }
}

long SamplePath::jumps_until(double t) const {
    return static_cast<long>(
        std::upper_bound(jump_times_.begin(), jump_times_.end(), t) - jump_times_.begin());
}

SamplePath sample_path(const ProcessParams& params, double horizon, std::uint64_t seed) {
    validate(params);
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ParameterError("horizon must be finite and > 0");
    }
    Rng rng(seed);
    std::vector<double> jumps;
    double t = rng.exponential(params.lambda);
    while (t < horizon) {
        jumps.push_back(t);
        t += rng.exponential(params.lambda);
    }
    return SamplePath(params, std::move(jumps), horizon, seed);
}

double demand_at(const SamplePath& path, double t) {
    if (!(t >= 0.0) || t > path.horizon()) {
        throw DomainError(fmt::format("t={} outside [0, {}]", t, path.horizon()));
    }
    const auto& p = path.params();
    return p.mu * t + p.alpha * static_cast<double>(path.jumps_until(t));
}

std::vector<double> period_increments(const SamplePath& path, double period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw ParameterError("period must be finite and > 0");
    }
    if (period > path.horizon()) {
        throw ParameterError("period longer than path horizon");
    }
    // Small tolerance so that horizon = n * period yields n periods despite rounding.
    const auto n = static_cast<std::size_t>(std::floor(path.horizon() / period + 1e-9));
    std::vector<double> out;
    out.reserve(n);
    double prev = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double t = std::min(static_cast<double>(k) * period, path.horizon());
        const double d = demand_at(path, t);
        out.push_back(d - prev);
        prev = d;
    }
    return out;
}

std::string path_to_csv(const SamplePath& path) {
    std::string out = "t,jump\n";
    for (double t : path.jump_times()) {
        out += fmt::format("{:.17g},{:.17g}\n", t, path.params().alpha);
    }
    return out;
}

std::string path_sidecar_json(const SamplePath& path) {
    nlohmann::ordered_json j;
    j["mu"] = path.params().mu;
    j["alpha"] = path.params().alpha;
    j["lambda"] = path.params().lambda;
    j["horizon"] = path.horizon();
    j["seed"] = path.seed();
    j["jump_count"] = path.jump_times().size();
    return j.dump(2) + "\n";
}

}  // namespace invctl
