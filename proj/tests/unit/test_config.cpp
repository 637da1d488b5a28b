#include "ecbs/config.hpp"
#include "ecbs/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace ecbs;

namespace {

std::string field_of(const std::string& text) {
    try {
        validate(parse_config(text));
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<accepted>";
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("defaults describe the regularized table run") {
    const ExperimentConfig cfg = parse_config("");
    CHECK(cfg.system == SystemPreset::Regularized);
    CHECK(cfg.n_cells == 1000);
    CHECK(cfg.a == -20.0);
    CHECK(cfg.b == 30.0);
    CHECK(cfg.oracle);
    CHECK_NOTHROW(validate(cfg));
    CHECK(cfg.resolved_snapshot_times() == std::vector<double>{5.0});
}

TEST_CASE("every key is parsed") {
    const ExperimentConfig cfg = parse_config(R"(
        # comment line
        system = cbs
        initial_condition = cbs-pulse   # trailing comment
        a = -10
        b = 10.5
        n_cells = 400
        dt = 0.01
        zeta = 2.5e-6
        t_end = 2
        snapshot_times = 0, 1, 2
        oracle = off
        weights = series
        output = results/cbs
    )");
    CHECK(cfg.system == SystemPreset::Classical);
    CHECK(cfg.initial_condition == InitialPreset::ClassicalPulse);
    CHECK(cfg.a == -10.0);
    CHECK(cfg.b == 10.5);
    CHECK(cfg.n_cells == 400);
    CHECK(cfg.dt == 0.01);
    CHECK(cfg.zeta == 2.5e-6);
    CHECK(cfg.t_end == 2.0);
    CHECK(cfg.snapshot_times == std::vector<double>{0, 1, 2});
    CHECK_FALSE(cfg.oracle);
    CHECK(cfg.weights == WeightEvaluation::Series);
    CHECK(cfg.output == "results/cbs");
    CHECK(cfg.coefficients().s4 == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("snapshot_every expands to a uniform list") {
    const ExperimentConfig cfg = parse_config("t_end = 15\nsnapshot_every = 3\n");
    CHECK(cfg.resolved_snapshot_times() == std::vector<double>{0, 3, 6, 9, 12, 15});
}

TEST_CASE("syntax errors name the offending key") {
    CHECK_THROWS_AS(parse_config("dt 0.1"), ConfigError);
    for (const auto& [text, field] : std::vector<std::pair<std::string, std::string>>{
             {"dt = 0.1\ndt = 0.2", "dt"},
             {"colour = red", "colour"},
             {"dt = fast", "dt"},
             {"n_cells = 10.5", "n_cells"},
             {"system = kdv", "system"},
             {"oracle = maybe", "oracle"},
             {"weights = exact", "weights"},
             {"s2 = 0.1", "s2"},
             {"snapshot_times = 1, x", "snapshot_times"},
             {"dt = inf", "dt"},
         }) {
        CAPTURE(text);
        try {
            parse_config(text);
            FAIL("accepted");
        } catch (const ConfigError& e) {
            CHECK(e.field() == field);
        }
    }
}

TEST_CASE("validation rejects inconsistent settings") {
    CHECK(field_of("system = custom\ns1 = 0.1\ns4 = 0.2\noracle = off") == "s1");
    CHECK(field_of("system = custom\ns3 = 0.1\ns4 = 0.2\noracle = off") == "s3");
    CHECK(field_of("a = 1\nb = 1") == "b");
    CHECK(field_of("n_cells = 3") == "n_cells");
    CHECK(field_of("dt = 0") == "dt");
    CHECK(field_of("zeta = -1") == "zeta");
    CHECK(field_of("zeta = 1e6") == "zeta");
    CHECK(field_of("t_end = -1") == "t_end");
    CHECK(field_of("snapshot_times = 1\nsnapshot_every = 1") == "snapshot_every");
    CHECK(field_of("snapshot_every = 0") == "snapshot_every");
    CHECK(field_of("snapshot_times = 2, 1") == "snapshot_times");
    CHECK(field_of("snapshot_times = 6") == "snapshot_times");
    CHECK(field_of("initial_condition = tabulated\noracle = off") == "initial_data");
    CHECK(field_of("initial_condition = tabulated\ninitial_data = /nonexistent.csv\noracle = off") ==
          "initial_data");
    CHECK(field_of("initial_data = x.csv") == "initial_data");
    CHECK(field_of("system = cbs") == "oracle");
    CHECK(field_of("system = custom\ns4 = 0.2") == "oracle");
    CHECK(field_of("system = custom\ns2 = 0.1\ns4 = 0.2\noracle = off") == "<accepted>");
    CHECK(field_of("t_end = 0") == "<accepted>");
}

TEST_CASE("scheme assumption is cited when s1 is non-zero") {
    try {
        validate(parse_config("system = custom\ns1 = 0.1\noracle = off"));
        FAIL("accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("s1 = s3 = 0") != std::string::npos);
    }
}

TEST_CASE("relative initial data paths resolve against the config file") {
    const auto dir = std::filesystem::temp_directory_path() / "ecbs_config_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "run.cfg") << "initial_condition = tabulated\ninitial_data = data.csv\noracle = off\n";
    const ExperimentConfig cfg = load_config(dir / "run.cfg");
    CHECK(cfg.initial_data == dir / "data.csv");
    CHECK_THROWS_AS(load_config(dir / "missing.cfg"), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("enum names round trip") {
    CHECK(to_string(SystemPreset::Classical) == "cbs");
    CHECK(to_string(InitialPreset::Tabulated) == "tabulated");
    CHECK(to_string(WeightEvaluation::ClosedForm) == "closed-form");
    CHECK(parse_number_list(" 1, 2.5 ,3e-1", "x") == std::vector<double>{1, 2.5, 0.3});
    CHECK(parse_number_list("  ", "x").empty());
}

} // TEST_SUITE
