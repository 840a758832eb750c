#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "invctl/commands.hpp"
#include "invctl/config.hpp"
#include "invctl/report.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<std::size_t> series;
    std::optional<std::string> mode;
};

invctl::RunConfig resolve(const Overrides& o) {
    invctl::RunConfig cfg = o.config_path.empty() ? invctl::RunConfig{}
                                                  : invctl::load_config(o.config_path);
    if (o.seed) {
        cfg.mc.base_seed = *o.seed;
        cfg.fpt.base_seed = *o.seed;
        cfg.experiment.base_seed = *o.seed;
    }
    if (o.paths) {
        cfg.mc.n_paths = *o.paths;
        cfg.fpt.n_paths = *o.paths;
    }
    if (o.series) cfg.experiment.n_series = *o.series;
    if (o.mode) {
        const auto mode = invctl::parse_ordering_mode(*o.mode);
        cfg.costs.ordering_mode = mode;
        cfg.experiment.costs.ordering_mode = mode;
    }
    invctl::validate(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Expected-cost engine and simulators for reorder-point inventory under "
                 "drifted Poisson demand"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides o;
    app.add_option("--config", o.config_path, "JSON config file (defaults apply when omitted)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    app.add_option("--seed", o.seed, "Base seed for every random stream");
    app.add_option("--paths", o.paths, "Monte Carlo path count");
    app.add_option("--series", o.series, "Number of demand series in the forecasting experiment");
    app.add_option("--mode", o.mode, "Ordering cost mode")
        ->check(CLI::IsMember({"per_order", "per_unit_times_Q"}));

    using Command = std::function<int(const invctl::RunConfig&, const std::filesystem::path&,
                                      std::ostream&)>;
    const std::map<std::string, std::pair<std::string, Command>> commands = {
        {"expected-cost", {"Closed-form expected cost curve", invctl::cmd_expected_cost}},
        {"sweep", {"Expected cost over a grid of a, Q and C_o", invctl::cmd_sweep}},
        {"simulate", {"One trajectory plus Monte Carlo summary", invctl::cmd_simulate}},
        {"validate", {"Analytical quantities against Monte Carlo means", invctl::cmd_validate}},
        {"fpt-diag", {"Gamma approximation vs empirical first-passage CDFs", invctl::cmd_fpt_diag}},
        {"table1", {"Rolling-forecast reorder-point cost table", invctl::cmd_table1}},
        {"compare", {"Analytical curve vs experiment cumulative cost", invctl::cmd_compare}},
        {"print-config", {"Print the resolved configuration as JSON", nullptr}},
    };
    for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = resolve(o);
        for (const auto& [name, entry] : commands) {
            if (!app.got_subcommand(name)) continue;
            if (!entry.second) {
                std::cout << invctl::config_to_json(cfg);
                return 0;
            }
            return entry.second(cfg, o.out_dir, std::cout);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
