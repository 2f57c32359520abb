#include "chainsim/presets.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "chainsim/metrics.hpp"

namespace chainsim {

namespace {

SimConfig base_config() {
    SimConfig cfg;
    cfg.timing = {200, 600, 200};
    cfg.cost_model = {CostModelKind::Current, 0};
    cfg.rotation = Rotation::RoundRobin;
    return cfg;
}

//! Full-rate saturation: a congested mempool of unit-gas clients against a
//! state-aware knapsack proposer.
Scenario coupled_baseline() {
    SimConfig cfg = base_config();
    cfg.mode = Mode::Coupled;
    cfg.builder = BuilderKind::Knapsack;
    cfg.validators = 20;
    cfg.gas_cap_micro = 10 * kGasUnit;
    cfg.rounds = 200;
    cfg.seed = 101;
    cfg.workload.honest_rate = 10;
    cfg.workload.initial_burst = 22;
    cfg.workload.honest_accounts = 64;
    return {"coupled-baseline", "congested unit-gas workload, state-aware knapsack proposer",
            {{"coupled", cfg}}};
}

SimConfig gaslight_decoupled(std::uint64_t seed) {
    SimConfig cfg = base_config();
    cfg.mode = Mode::Decoupled;
    cfg.builder = BuilderKind::GreedyEst;
    cfg.lag = 2;
    cfg.validators = 4;
    cfg.gas_cap_micro = kGasUnit;
    cfg.rounds = 60;
    cfg.seed = seed;
    cfg.workload.honest_rate = 6;
    cfg.workload.honest_accounts = 16;
    cfg.workload.adversary = AdversaryKind::Gaslight;
    cfg.workload.junk_est_micro = cfg.gas_cap_micro / cfg.validators;
    cfg.workload.junk_price = 1000;
    cfg.workload.decoy_price = 1;
    cfg.workload.attack_from_round = 1;
    return cfg;
}

Scenario decoupled_gaslight() {
    SimConfig dec = gaslight_decoupled(202);
    SimConfig cpl = dec;
    cpl.mode = Mode::Coupled;
    cpl.builder = BuilderKind::Knapsack;
    return {"decoupled-gaslight",
            "junk estimates starve the estimate-driven proposer; the state-aware proposer shrugs",
            {{"decoupled", dec}, {"coupled-twin", cpl}}};
}

Scenario decoupled_drain() {
    SimConfig dec = base_config();
    dec.mode = Mode::Decoupled;
    dec.builder = BuilderKind::GreedyEst;
    dec.lag = 2;
    dec.validators = 4;
    dec.gas_cap_micro = kGasUnit;
    dec.rounds = 20;
    dec.seed = 303;
    dec.cost_model = {CostModelKind::FullEstimate, 0};
    dec.workload.honest_rate = 4;
    dec.workload.honest_accounts = 16;
    dec.workload.adversary = AdversaryKind::FundDrain;
    SimConfig cpl = dec;
    cpl.mode = Mode::Coupled;
    cpl.builder = BuilderKind::Knapsack;
    return {"decoupled-drain",
            "the attacker empties its account before its priced junk settles; fees go uncollected",
            {{"decoupled", dec}, {"coupled-twin", cpl}}};
}

Scenario rational_fairness() {
    SimConfig cfg = base_config();
    cfg.mode = Mode::Decoupled;
    cfg.builder = BuilderKind::GreedyEst;
    cfg.lag = 2;
    cfg.validators = 4;
    cfg.gas_cap_micro = kGasUnit;
    cfg.rounds = 40;
    cfg.seed = 404;
    cfg.workload.honest_rate = 6;
    cfg.workload.honest_accounts = 16;
    cfg.workload.price_lo = 10;
    cfg.workload.price_hi = 10;
    cfg.workload.adversary = AdversaryKind::RationalValidator;
    cfg.workload.rational_validator = 0;
    cfg.workload.junk_est_micro = cfg.gas_cap_micro / cfg.validators;
    cfg.workload.junk_price = 1000;
    cfg.workload.attack_from_round = 1;
    return {"rational-fairness",
            "one validator floods junk it never includes itself and keeps every fee",
            {{"decoupled", cfg}}};
}

SimConfig partial_base(std::uint64_t seed) {
    SimConfig cfg = base_config();
    cfg.mode = Mode::Partial;
    cfg.builder = BuilderKind::Partial;
    // delta_e = 500 puts one block in flight between settlement and building;
    // the default 200 would leave the pending window empty.
    cfg.timing = {500, 600, 200};
    cfg.seed = seed;
    return cfg;
}

Scenario partial_secure() {
    SimConfig cfg = partial_base(505);
    cfg.validators = 4;
    cfg.gas_cap_micro = kGasUnit;
    cfg.rounds = 49; // 48 executed blocks: 12 full rotations
    cfg.workload.honest_rate = 4;
    cfg.workload.fresh_accounts = true;
    cfg.workload.price_lo = 10;
    cfg.workload.price_hi = 10;
    cfg.workload.adversary = AdversaryKind::Gaslight;
    cfg.workload.junk_est_micro = cfg.gas_cap_micro / cfg.validators;
    cfg.workload.junk_price = 1000;
    cfg.workload.decoy_price = 1;
    cfg.workload.attack_from_round = 1;
    return {"partial-secure",
            "the gaslight workload against the conflict-aware proposer: junk never lands",
            {{"partial", cfg}}};
}

Scenario partial_latency() {
    SimConfig conflict = partial_base(606);
    conflict.validators = 4;
    conflict.gas_cap_micro = 2 * kGasUnit;
    conflict.rounds = 80;
    conflict.workload.honest_rate = 1;
    conflict.workload.fresh_accounts = true;
    conflict.workload.conflict_all = true;
    conflict.workload.price_lo = 10;
    conflict.workload.price_hi = 10;

    SimConfig conflict_coupled = conflict;
    conflict_coupled.mode = Mode::Coupled;
    conflict_coupled.builder = BuilderKind::Knapsack;

    SimConfig open = conflict;
    open.workload.conflict_all = false;
    SimConfig open_coupled = open;
    open_coupled.mode = Mode::Coupled;
    open_coupled.builder = BuilderKind::Knapsack;

    return {"partial-latency",
            "worst-case fully conflicting stream vs an independent one, against the coupled pipeline",
            {{"partial-conflict", conflict},
             {"coupled-conflict", conflict_coupled},
             {"partial-open", open},
             {"coupled-open", open_coupled}}};
}

Scenario partial_throughput() {
    SimConfig par = partial_base(707);
    par.validators = 8;
    par.gas_cap_micro = 4 * kGasUnit;
    par.rounds = 60;
    par.workload.honest_rate = 8;
    par.workload.fresh_accounts = true;

    SimConfig dec = par;
    dec.mode = Mode::Decoupled;
    dec.builder = BuilderKind::GreedyEst;
    dec.lag = par.exec_delay(); // same pipeline depth, same executed horizon

    return {"partial-throughput",
            "independent saturating workload: conflict-aware selection matches the oblivious pipeline",
            {{"partial", par}, {"decoupled-honest", dec}}};
}

} // namespace

std::vector<std::string> preset_names() {
    return {"coupled-baseline", "decoupled-gaslight", "decoupled-drain",  "rational-fairness",
            "partial-secure",   "partial-latency",    "partial-throughput"};
}

Scenario make_preset(const std::string& name) {
    if (name == "coupled-baseline") return coupled_baseline();
    if (name == "decoupled-gaslight") return decoupled_gaslight();
    if (name == "decoupled-drain") return decoupled_drain();
    if (name == "rational-fairness") return rational_fairness();
    if (name == "partial-secure") return partial_secure();
    if (name == "partial-latency") return partial_latency();
    if (name == "partial-throughput") return partial_throughput();
    throw ConfigError("unknown preset '" + name + "'");
}

ScenarioResult run_scenario(const Scenario& scenario) {
    ScenarioResult result;
    result.scenario = scenario;
    for (const NamedRun& run : scenario.runs) result.records.push_back(run_simulation(run.config));
    return result;
}

std::vector<std::string> write_artifacts(const ScenarioResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;

    auto emit = [&](const std::string& file, auto writer) {
        std::string path = (fs::path(out_dir) / file).string();
        std::ofstream os(path, std::ios::binary);
        writer(os);
        written.push_back(path);
    };

    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const std::string& label = result.scenario.runs[i].label;
        const RunRecord& run = result.records[i];
        emit(label + "_rounds.csv", [&](std::ostream& os) { write_rounds_csv(run, os); });
        emit(label + "_outcomes.csv", [&](std::ostream& os) { write_outcomes_csv(run, os); });
        emit(label + "_summary.txt", [&](std::ostream& os) { write_summary(run, os); });
        emit(label + "_fairness.csv", [&](std::ostream& os) { write_fairness_report(run, os); });
    }

    emit("scenario_summary.txt", [&](std::ostream& os) {
        os << "scenario=" << result.scenario.name << "\n" << result.scenario.description << "\n\n";
        for (std::size_t i = 0; i < result.records.size(); ++i) {
            os << "== " << result.scenario.runs[i].label << " ==\n";
            write_summary(result.records[i], os);
            os << "\n";
        }
        if (result.records.size() > 1) {
            os << "== comparison vs '" << result.scenario.runs[0].label << "' ==\n";
            const RunRecord& head = result.records[0];
            for (std::size_t i = 1; i < result.records.size(); ++i) {
                const RunRecord& other = result.records[i];
                os << result.scenario.runs[i].label << ": ";
                try {
                    Rational dt = throughput_gas_per_round(other) - throughput_gas_per_round(head);
                    os << "throughput_delta=" << to_decimal(dt, 4);
                } catch (const std::exception&) {
                    os << "throughput_delta=n/a";
                }
                try {
                    Rational dl = mean_latency_ms(other) - mean_latency_ms(head);
                    os << " latency_ms_delta=" << to_decimal(dl, 2);
                } catch (const std::exception&) {
                    os << " latency_ms_delta=n/a";
                }
                os << "\n";
            }
        }
    });
    return written;
}

} // namespace chainsim
