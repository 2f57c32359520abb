#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "chainsim/casestudy.hpp"
#include "chainsim/metrics.hpp"
#include "chainsim/presets.hpp"

using namespace chainsim;

TEST_CASE("every preset builds a valid scenario") {
    for (const std::string& name : preset_names()) {
        Scenario s = make_preset(name);
        CHECK(!s.runs.empty());
        for (const NamedRun& run : s.runs) CHECK_NOTHROW(finalize_config(run.config));
    }
}

TEST_CASE("unknown presets are refused") {
    CHECK_THROWS_AS(make_preset("no-such-preset"), ConfigError);
}

TEST_CASE("scenario artifacts land on disk and replay identically") {
    Scenario s = make_preset("decoupled-drain");
    s.runs[0].config.rounds = 8;
    s.runs.resize(1);
    ScenarioResult result = run_scenario(s);

    std::filesystem::path dir = std::filesystem::temp_directory_path() / "chainsim_test_artifacts";
    std::filesystem::remove_all(dir);
    std::vector<std::string> files = write_artifacts(result, dir.string());
    CHECK(files.size() == 5); // rounds, outcomes, summary, fairness, scenario summary
    for (const std::string& f : files) CHECK(std::filesystem::exists(f));

    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    std::string first = slurp(files[0]);
    CHECK(!first.empty());

    ScenarioResult again = run_scenario(s);
    std::filesystem::path dir2 = std::filesystem::temp_directory_path() / "chainsim_test_artifacts2";
    std::filesystem::remove_all(dir2);
    std::vector<std::string> files2 = write_artifacts(again, dir2.string());
    CHECK(slurp(files2[0]) == first);
    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("the bundled fixture trace reproduces its hand-derived statistics") {
    std::string path = std::string(CHAINSIM_FIXTURE_DIR) + "/sample_trace.csv";
    TraceIngest in = ingest_trace(path);
    CHECK(in.malformed_rows == 1);
    CHECK(in.invariant_rows == 1);
    OverestimationStats s = overestimation_stats(in.rows);
    CHECK(s.usable_rows == 9);
    CHECK(s.zero_use_rows == 1);
    // o = {100, 200, 50, 300, 50, 300, 0, 50, 71400}; mean = 72450/9.
    CHECK(s.mean_pct == doctest::Approx(8050.0));
    CHECK(s.p10 == 0.0);
    CHECK(s.p25 == 50.0);
    CHECK(s.p50 == 100.0);
    CHECK(s.p75 == 300.0);
    CHECK(s.p90 == 71'400.0);
    CHECK(s.sum_used == 696);
    CHECK(s.sum_limit == 2455);

    std::string json = stats_report_json(s, 5.0);
    CHECK(json.find("percentiles_descending") != std::string::npos);
}

TEST_CASE("the bundled scenario config parses and runs") {
    std::string path = std::string(CHAINSIM_FIXTURE_DIR) + "/sample_config.ini";
    SimConfig cfg = parse_config_file(path);
    CHECK(cfg.mode == Mode::Decoupled);
    cfg.rounds = 6;
    RunRecord run = run_simulation(cfg);
    CHECK(run.violations.empty());
}
