#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "invctl/commands.hpp"
#include "invctl/config.hpp"
#include "invctl/errors.hpp"

using namespace invctl;
namespace fs = std::filesystem;

namespace {

const char* kSmallConfig = R"({
  "grid": {"t_start": 0, "t_end": 5, "steps": 10},
  "mc": {"n_paths": 2000, "base_seed": 11, "horizon": 5, "validate_times": [2, 5]},
  "sweep": {"a": [40, 50], "Q": [50], "c_o": [5]},
  "fpt": {"passages": 2, "n_paths": 2000, "base_seed": 3, "grid": {"t_start": 0, "t_end": 10, "steps": 20}},
  "experiment": {"n_series": 20, "base_seed": 5}
})";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("invctl_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

using Command = std::function<int(const RunConfig&, const fs::path&, std::ostream&)>;

}  // namespace

TEST_CASE("config defaults and round trip") {
    const auto cfg = config_from_json("{}");
    CHECK(cfg.process.mu == 5.0);
    CHECK(cfg.process.alpha == 10.0);
    CHECK(cfg.process.lambda == 1.0);
    CHECK(cfg.policy.x0 == 100.0);
    CHECK(cfg.policy.a == 50.0);
    CHECK(cfg.policy.Q == 50.0);
    CHECK(cfg.series.tail_tol == 1e-12);
    CHECK(cfg.series.n_max == 10000);
    CHECK(cfg.experiment.costs.ordering_mode == OrderingMode::per_order);

    const auto again = config_from_json(config_to_json(config_from_json(kSmallConfig)));
    CHECK(again.mc.n_paths == 2000);
    CHECK(again.fpt.grid.steps == 20);
    CHECK(again.experiment.n_series == 20);
    CHECK(config_to_json(again) == config_to_json(config_from_json(kSmallConfig)));
}

TEST_CASE("config rejects bad input") {
    CHECK_THROWS_AS(config_from_json(R"({"policy": {"x0": 100, "b": 3}})"), ParameterError);
    CHECK_THROWS_AS(config_from_json(R"({"extra": {}})"), ParameterError);
    CHECK_THROWS_AS(config_from_json(R"({"policy": {"a": 150}})"), ParameterError);
    CHECK_THROWS_AS(config_from_json(R"({"process": {"mu": "five"}})"), ParameterError);
    CHECK_THROWS_AS(config_from_json(R"({"costs": {"ordering_mode": "bulk"}})"), ParameterError);
    CHECK_THROWS_AS(config_from_json(R"({"experiment": {"trigger": "sometimes"}})"), ParameterError);
    CHECK_THROWS_AS(config_from_json("{not json"), ParameterError);
    CHECK_THROWS_AS(load_config("/nonexistent/invctl.json"), ParameterError);
}

TEST_CASE("CSV headers") {
    const auto cfg = config_from_json(kSmallConfig);
    const auto dir = fresh_dir("headers");
    std::ostringstream log;
    REQUIRE(cmd_expected_cost(cfg, dir, log) == 0);
    REQUIRE(cmd_sweep(cfg, dir, log) == 0);
    REQUIRE(cmd_fpt_diag(cfg, dir, log) == 0);
    REQUIRE(cmd_table1(cfg, dir, log) == 0);
    REQUIRE(cmd_compare(cfg, dir, log) == 0);
    cmd_validate(cfg, dir, log);
    CHECK(first_line(slurp(dir / "expected_cost.csv")) == kCostCsvHeader);
    CHECK(first_line(slurp(dir / "sweep.csv")) == kCostCsvHeader);
    CHECK(first_line(slurp(dir / "fpt_diag.csv")) == kFptCsvHeader);
    CHECK(first_line(slurp(dir / "fpt_ks.csv")) == kFptKsCsvHeader);
    CHECK(first_line(slurp(dir / "table1.csv")) == kTableCsvHeader);
    CHECK(first_line(slurp(dir / "compare.csv")) == kCompareCsvHeader);
    CHECK(first_line(slurp(dir / "validation.csv")) == kValidationCsvHeader);
    fs::remove_all(dir);
}

TEST_CASE("every command is deterministic") {
    const auto cfg = config_from_json(kSmallConfig);
    const std::pair<const char*, Command> commands[] = {
        {"expected-cost", cmd_expected_cost}, {"sweep", cmd_sweep},   {"simulate", cmd_simulate},
        {"validate", cmd_validate},           {"fpt-diag", cmd_fpt_diag}, {"table1", cmd_table1},
        {"compare", cmd_compare},
    };
    for (const auto& [name, cmd] : commands) {
        CAPTURE(name);
        const auto a = fresh_dir(std::string(name) + "_a");
        const auto b = fresh_dir(std::string(name) + "_b");
        std::ostringstream la, lb;
        CHECK(cmd(cfg, a, la) == cmd(cfg, b, lb));
        CHECK(la.str() == lb.str());
        std::size_t files = 0;
        for (const auto& entry : fs::directory_iterator(a)) {
            ++files;
            CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
        }
        CHECK(files > 0);
        fs::remove_all(a);
        fs::remove_all(b);
    }
}

TEST_CASE("expected cost grid with a single point") {
    auto cfg = config_from_json(R"({"grid": {"t_start": 0, "t_end": 0, "steps": 10}})");
    const auto dir = fresh_dir("single");
    std::ostringstream log;
    REQUIRE(cmd_expected_cost(cfg, dir, log) == 0);
    const auto csv = slurp(dir / "expected_cost.csv");
    const auto body = csv.substr(csv.find('\n') + 1);
    CHECK(body == "50,50,1,5,10,per_unit_times_Q,0,0,0,0,0\n");
    fs::remove_all(dir);
}

TEST_CASE("validate warns about low power") {
    auto cfg = config_from_json(R"({"mc": {"n_paths": 200, "validate_times": [1]}})");
    const auto dir = fresh_dir("lowpower");
    std::ostringstream log;
    cmd_validate(cfg, dir, log);
    CHECK(log.str().find("warning: 200 paths give insufficient power") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("validation negative control widens the discrepancy") {
    auto cfg = config_from_json(R"({"mc": {"n_paths": 4000, "validate_times": [2, 5]}})");
    const auto base = run_validation(cfg);
    cfg.analytic_lambda_scale = 2.0;
    const auto scaled = run_validation(cfg);
    REQUIRE(base.size() == scaled.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CAPTURE(base[i].quantity);
        CHECK(base[i].mc_mean == scaled[i].mc_mean);
        if (base[i].quantity == "expected_renewals" || base[i].quantity == "integrated_renewals") {
            CHECK_FALSE(scaled[i].pass);
        }
    }
    cfg.analytic_lambda_scale = -1.0;
    CHECK_THROWS_AS(validate(cfg), ParameterError);
}
