#include "invctl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "invctl/errors.hpp"

namespace invctl {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(ReorderTrigger trigger) {
    return trigger == ReorderTrigger::on_hand ? "on_hand" : "forecast_projected";
}

std::string_view to_string(Forecaster forecaster) {
    switch (forecaster) {
        case Forecaster::arima: return "arima";
        case Forecaster::croston: return "croston";
        case Forecaster::window_mean: return "window_mean";
    }
    return "unknown";
}

namespace {

ReorderTrigger parse_trigger(const std::string& s) {
    if (s == "on_hand") return ReorderTrigger::on_hand;
    if (s == "forecast_projected") return ReorderTrigger::forecast_projected;
    throw ParameterError("unknown trigger '" + s + "'");
}

Forecaster parse_forecaster(const std::string& s) {
    if (s == "arima") return Forecaster::arima;
    if (s == "croston") return Forecaster::croston;
    if (s == "window_mean") return Forecaster::window_mean;
    throw ParameterError("unknown forecaster '" + s + "'");
}

void check_keys(const json& j, const std::string& section, std::set<std::string> allowed) {
    if (!j.is_object()) throw ParameterError("config section '" + section + "' must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            throw ParameterError("unknown config key '" + section + "." + key + "'");
        }
    }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

void read_grid(const json& j, const std::string& section, GridSpec& g) {
    check_keys(j, section, {"t_start", "t_end", "steps"});
    read(j, "t_start", g.t_start);
    read(j, "t_end", g.t_end);
    read(j, "steps", g.steps);
}

ordered_json grid_json(const GridSpec& g) {
    return {{"t_start", g.t_start}, {"t_end", g.t_end}, {"steps", g.steps}};
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
    RunConfig cfg;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        check_keys(root, "root",
                   {"process", "policy", "costs", "grid", "series", "mc", "sweep", "fpt",
                    "experiment", "diagnostics"});
        if (root.contains("process")) {
            const auto& j = root["process"];
            check_keys(j, "process", {"mu", "alpha", "lambda"});
            read(j, "mu", cfg.process.mu);
            read(j, "alpha", cfg.process.alpha);
            read(j, "lambda", cfg.process.lambda);
        }
        if (root.contains("policy")) {
            const auto& j = root["policy"];
            check_keys(j, "policy", {"x0", "a", "Q"});
            read(j, "x0", cfg.policy.x0);
            read(j, "a", cfg.policy.a);
            read(j, "Q", cfg.policy.Q);
        }
        if (root.contains("costs")) {
            const auto& j = root["costs"];
            check_keys(j, "costs", {"c_o", "c_h", "c_so", "ordering_mode"});
            read(j, "c_o", cfg.costs.c_o);
            read(j, "c_h", cfg.costs.c_h);
            read(j, "c_so", cfg.costs.c_so);
            if (j.contains("ordering_mode")) {
                cfg.costs.ordering_mode = parse_ordering_mode(j["ordering_mode"].get<std::string>());
            }
        }
        if (root.contains("grid")) read_grid(root["grid"], "grid", cfg.grid);
        if (root.contains("series")) {
            const auto& j = root["series"];
            check_keys(j, "series", {"tail_tol", "n_max"});
            read(j, "tail_tol", cfg.series.tail_tol);
            read(j, "n_max", cfg.series.n_max);
        }
        if (root.contains("mc")) {
            const auto& j = root["mc"];
            check_keys(j, "mc", {"n_paths", "base_seed", "horizon", "validate_times"});
            read(j, "n_paths", cfg.mc.n_paths);
            read(j, "base_seed", cfg.mc.base_seed);
            read(j, "horizon", cfg.mc.horizon);
            read(j, "validate_times", cfg.mc.validate_times);
        }
        if (root.contains("sweep")) {
            const auto& j = root["sweep"];
            check_keys(j, "sweep", {"a", "Q", "c_o"});
            read(j, "a", cfg.sweep.a);
            read(j, "Q", cfg.sweep.Q);
            read(j, "c_o", cfg.sweep.c_o);
        }
        if (root.contains("fpt")) {
            const auto& j = root["fpt"];
            check_keys(j, "fpt", {"passages", "n_paths", "base_seed", "grid"});
            read(j, "passages", cfg.fpt.passages);
            read(j, "n_paths", cfg.fpt.n_paths);
            read(j, "base_seed", cfg.fpt.base_seed);
            if (j.contains("grid")) read_grid(j["grid"], "fpt.grid", cfg.fpt.grid);
        }
        if (root.contains("experiment")) {
            const auto& j = root["experiment"];
            check_keys(j, "experiment",
                       {"n_series", "window", "first_period", "last_period", "period_length",
                        "base_seed", "ordering_mode", "trigger", "forecaster", "p_max", "q_max",
                        "d_set", "croston_smoothing"});
            auto& e = cfg.experiment;
            read(j, "n_series", e.n_series);
            read(j, "window", e.window);
            read(j, "first_period", e.first_period);
            read(j, "last_period", e.last_period);
            read(j, "period_length", e.period_length);
            read(j, "base_seed", e.base_seed);
            if (j.contains("ordering_mode")) {
                e.costs.ordering_mode = parse_ordering_mode(j["ordering_mode"].get<std::string>());
            }
            if (j.contains("trigger")) e.trigger = parse_trigger(j["trigger"].get<std::string>());
            if (j.contains("forecaster")) {
                e.forecaster = parse_forecaster(j["forecaster"].get<std::string>());
            }
            read(j, "p_max", e.search.p_max);
            read(j, "q_max", e.search.q_max);
            read(j, "d_set", e.search.d_set);
            read(j, "croston_smoothing", e.croston_smoothing);
        }
        if (root.contains("diagnostics")) {
            const auto& j = root["diagnostics"];
            check_keys(j, "diagnostics", {"analytic_lambda_scale"});
            read(j, "analytic_lambda_scale", cfg.analytic_lambda_scale);
        }
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config type error: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["process"] = {{"mu", cfg.process.mu}, {"alpha", cfg.process.alpha},
                    {"lambda", cfg.process.lambda}};
    j["policy"] = {{"x0", cfg.policy.x0}, {"a", cfg.policy.a}, {"Q", cfg.policy.Q}};
    j["costs"] = {{"c_o", cfg.costs.c_o},
                  {"c_h", cfg.costs.c_h},
                  {"c_so", cfg.costs.c_so},
                  {"ordering_mode", to_string(cfg.costs.ordering_mode)}};
    j["grid"] = grid_json(cfg.grid);
    j["series"] = {{"tail_tol", cfg.series.tail_tol}, {"n_max", cfg.series.n_max}};
    j["mc"] = {{"n_paths", cfg.mc.n_paths},
               {"base_seed", cfg.mc.base_seed},
               {"horizon", cfg.mc.horizon},
               {"validate_times", cfg.mc.validate_times}};
    j["sweep"] = {{"a", cfg.sweep.a}, {"Q", cfg.sweep.Q}, {"c_o", cfg.sweep.c_o}};
    j["fpt"] = {{"passages", cfg.fpt.passages},
                {"n_paths", cfg.fpt.n_paths},
                {"base_seed", cfg.fpt.base_seed},
                {"grid", grid_json(cfg.fpt.grid)}};
    const auto& e = cfg.experiment;
    j["experiment"] = {{"n_series", e.n_series},
                       {"window", e.window},
                       {"first_period", e.first_period},
                       {"last_period", e.last_period},
                       {"period_length", e.period_length},
                       {"base_seed", e.base_seed},
                       {"ordering_mode", to_string(e.costs.ordering_mode)},
                       {"trigger", to_string(e.trigger)},
                       {"forecaster", to_string(e.forecaster)},
                       {"p_max", e.search.p_max},
                       {"q_max", e.search.q_max},
                       {"d_set", e.search.d_set},
                       {"croston_smoothing", e.croston_smoothing}};
    j["diagnostics"] = {{"analytic_lambda_scale", cfg.analytic_lambda_scale}};
    return j.dump(2) + "\n";
}

ExperimentConfig experiment_config(const RunConfig& cfg) {
    ExperimentConfig e = cfg.experiment;
    e.policy = cfg.policy;
    e.costs = CostParams{cfg.costs.c_o, cfg.costs.c_h, cfg.costs.c_so,
                         cfg.experiment.costs.ordering_mode};
    return e;
}

void validate(const RunConfig& cfg) {
    validate(cfg.process);
    validate(cfg.policy);
    validate(cfg.costs);
    validate(cfg.series);
    if (cfg.grid.steps < 1) throw ParameterError("grid.steps must be >= 1");
    if (!(cfg.grid.t_start >= 0.0) || !(cfg.grid.t_end >= cfg.grid.t_start)) {
        throw ParameterError("grid requires 0 <= t_start <= t_end");
    }
    if (cfg.mc.n_paths < 2) throw ParameterError("mc.n_paths must be >= 2");
    if (!(cfg.mc.horizon > 0.0)) throw ParameterError("mc.horizon must be > 0");
    for (double t : cfg.mc.validate_times) {
        if (!(t > 0.0)) throw ParameterError("mc.validate_times must be > 0");
    }
    if (cfg.sweep.a.empty() || cfg.sweep.Q.empty() || cfg.sweep.c_o.empty()) {
        throw ParameterError("sweep lists must be non-empty");
    }
    if (cfg.fpt.passages < 1) throw ParameterError("fpt.passages must be >= 1");
    if (cfg.fpt.n_paths < 1) throw ParameterError("fpt.n_paths must be >= 1");
    if (cfg.fpt.grid.steps < 1) throw ParameterError("fpt.grid.steps must be >= 1");
    if (!(cfg.analytic_lambda_scale > 0.0)) {
        throw ParameterError("diagnostics.analytic_lambda_scale must be > 0");
    }
    validate(experiment_config(cfg));
}

}  // namespace invctl
