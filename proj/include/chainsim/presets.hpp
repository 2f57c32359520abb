#pragma once

#include <string>
#include <vector>

#include "chainsim/config.hpp"
#include "chainsim/protocol.hpp"

namespace chainsim {

struct NamedRun {
    std::string label;
    SimConfig config;
};

//! A scenario is one or more runs sharing a workload seed; multi-run
//! scenarios exist to compare couplings on the same transaction stream.
struct Scenario {
    std::string name;
    std::string description;
    std::vector<NamedRun> runs;
};

std::vector<std::string> preset_names();

//! Throws ConfigError for unknown names.
Scenario make_preset(const std::string& name);

struct ScenarioResult {
    Scenario scenario;
    std::vector<RunRecord> records; // parallel to scenario.runs
};

ScenarioResult run_scenario(const Scenario& scenario);

//! Writes per-run CSVs, summaries and fairness reports plus a scenario-level
//! comparison into out_dir (created if missing). Returns paths written.
std::vector<std::string> write_artifacts(const ScenarioResult& result, const std::string& out_dir);

} // namespace chainsim
