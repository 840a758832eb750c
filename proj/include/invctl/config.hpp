#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invctl/baseline_forecast.hpp"
#include "invctl/params.hpp"
#include "invctl/passage_renewal.hpp"

namespace invctl {

struct GridSpec {
    double t_start = 0.0;
    double t_end = 10.0;
    int steps = 100;
};

struct McConfig {
    std::size_t n_paths = 100'000;
    std::uint64_t base_seed = 20240601;
    double horizon = 10.0;
    std::vector<double> validate_times = {2.0, 5.0, 10.0};
};

struct SweepConfig {
    std::vector<double> a = {40.0, 50.0, 60.0};
    std::vector<double> Q = {50.0, 60.0, 110.0, 120.0};
    std::vector<double> c_o = {5.0, 10.0};
};

struct FptConfig {
    int passages = 5;
    std::size_t n_paths = 100'000;
    std::uint64_t base_seed = 777;
    GridSpec grid{0.0, 20.0, 200};
};

/// Everything a CLI run needs. Defaults reproduce the reference setup:
/// x0 = 100, mu = 5, alpha = 10, lambda = 1, a = 50, Q = 50.
struct RunConfig {
    ProcessParams process;
    PolicyParams policy;
    CostParams costs;
    GridSpec grid;
    RenewalSeriesConfig series;
    McConfig mc;
    SweepConfig sweep;
    FptConfig fpt;
    ExperimentConfig experiment;
    /// Multiplies lambda on the analytical side of `validate` only. Anything
    /// other than 1 is a negative control that must make validation fail.
    double analytic_lambda_scale = 1.0;
};

/// Parses a JSON document; absent keys keep their defaults, unknown keys are rejected.
RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::string& path);
std::string config_to_json(const RunConfig& cfg);

/// Throws ParameterError naming the first violated invariant.
void validate(const RunConfig& cfg);

std::string_view to_string(ReorderTrigger trigger);
std::string_view to_string(Forecaster forecaster);

}  // namespace invctl

namespace invctl {

/// The experiment settings with policy and costs taken from the top level
/// of the run config (keeping the experiment's own ordering mode).
ExperimentConfig experiment_config(const RunConfig& cfg);

}  // namespace invctl
