#include "doctest.h"

#include <sstream>

#include "chainsim/metrics.hpp"
#include "chainsim/presets.hpp"
#include "chainsim/protocol.hpp"
#include "chainsim/timing.hpp"

using namespace chainsim;

namespace {

SimConfig honest_config(Mode mode, BuilderKind builder, std::uint64_t rounds) {
    SimConfig cfg;
    cfg.mode = mode;
    cfg.builder = builder;
    cfg.rounds = rounds;
    cfg.validators = 4;
    cfg.gas_cap_micro = kGasUnit;
    cfg.seed = 11;
    cfg.workload.honest_rate = 4;
    cfg.workload.honest_accounts = 12;
    return cfg;
}

} // namespace

TEST_CASE("pipeline speed-up is an exact rational") {
    CHECK(beta(TimingModel{200, 600, 200}) == ratio(5, 1));
    CHECK(beta(TimingModel{1, 1, 1}) == ratio(3, 1));
    CHECK(beta(TimingModel{250, 600, 150}) == ratio(4, 1)); // 1000/250
    CHECK_THROWS_AS(beta(TimingModel{0, 600, 200}), std::domain_error);
}

TEST_CASE("slot durations per coupling") {
    TimingModel t{200, 600, 200};
    CHECK(coupled_slot_ms(t) == 1000);
    CHECK(pipelined_slot_ms(t) == 600);
    CHECK(partial_pipeline_depth(t, 200) == 1);  // 400ms of work inside a 600ms slot
    CHECK(partial_pipeline_depth(TimingModel{500, 600, 200}, 200) == 2);
    CHECK(partial_pipeline_depth(TimingModel{1000, 600, 200}, 200) == 2); // exactly two slots
}

TEST_CASE("a zero-round run is empty") {
    RunRecord run = run_simulation(honest_config(Mode::Coupled, BuilderKind::Knapsack, 0));
    CHECK(run.rounds_log.empty());
    CHECK(run.violations.empty());
    CHECK_THROWS(throughput_gas_per_round(run));
}

TEST_CASE("coupled rounds execute in place and carry the full slot") {
    RunRecord run = run_simulation(honest_config(Mode::Coupled, BuilderKind::Knapsack, 20));
    CHECK(run.slot_ms == 1000);
    CHECK(run.speedup == ratio(5, 1));
    for (const RoundEntry& e : run.rounds_log) CHECK(e.exec_round == static_cast<std::int64_t>(e.round));
    CHECK(run.violations.empty());
}

TEST_CASE("decoupled execution trails by exactly the configured lag") {
    SimConfig cfg = honest_config(Mode::Decoupled, BuilderKind::GreedyEst, 20);
    cfg.lag = 2;
    RunRecord run = run_simulation(cfg);
    CHECK(run.slot_ms == 600);
    for (const RoundEntry& e : run.rounds_log) {
        if (e.exec_round >= 0) CHECK(e.exec_round == static_cast<std::int64_t>(e.round + 2));
    }
    CHECK(run.rounds_log[18].exec_round == -1);
    CHECK(run.rounds_log[19].exec_round == -1);
    CHECK(run.violations.empty());
}

TEST_CASE("at lag zero the oblivious pipeline matches the sequential one on honest work") {
    SimConfig dec = honest_config(Mode::Decoupled, BuilderKind::GreedyEst, 30);
    dec.lag = 0;
    SimConfig cpl = honest_config(Mode::Coupled, BuilderKind::GreedyEst, 30);
    RunRecord a = run_simulation(dec);
    RunRecord b = run_simulation(cpl);
    REQUIRE(a.rounds_log.size() == b.rounds_log.size());
    for (std::size_t i = 0; i < a.rounds_log.size(); ++i) {
        const RoundEntry& ea = a.rounds_log[i];
        const RoundEntry& eb = b.rounds_log[i];
        REQUIRE(ea.outcomes.size() == eb.outcomes.size());
        for (std::size_t k = 0; k < ea.outcomes.size(); ++k) {
            CHECK(ea.outcomes[k].tx_id == eb.outcomes[k].tx_id);
            CHECK(ea.outcomes[k].status == eb.outcomes[k].status);
            CHECK(ea.outcomes[k].gas_consumed == eb.outcomes[k].gas_consumed);
            CHECK(ea.outcomes[k].charged == eb.outcomes[k].charged);
        }
    }
}

TEST_CASE("identical config and seed replay byte-for-byte") {
    Scenario scenario = make_preset("decoupled-gaslight");
    RunRecord a = run_simulation(scenario.runs[0].config);
    RunRecord b = run_simulation(scenario.runs[0].config);
    std::ostringstream csv_a, csv_b, out_a, out_b;
    write_rounds_csv(a, csv_a);
    write_rounds_csv(b, csv_b);
    write_outcomes_csv(a, out_a);
    write_outcomes_csv(b, out_b);
    CHECK(csv_a.str() == csv_b.str());
    CHECK(out_a.str() == out_b.str());
}

TEST_CASE("every preset run conserves the mempool and keeps its schedule") {
    for (const std::string& name : preset_names()) {
        Scenario scenario = make_preset(name);
        for (const NamedRun& nr : scenario.runs) {
            RunRecord run = run_simulation(nr.config);
            INFO(name, "/", nr.label);
            CHECK(run.violations.empty());
        }
    }
}

TEST_CASE("a proposer that misdeclares its write union is excluded for good") {
    SimConfig cfg = honest_config(Mode::Partial, BuilderKind::Partial, 30);
    cfg.timing = {500, 600, 200}; // one block stays pending between rounds
    cfg.faulty_proposer = 1;
    RunRecord run = run_simulation(cfg);
    CHECK(run.violations.empty());

    REQUIRE(!run.exclusions.empty());
    CHECK(run.exclusions[0].validator == 1);
    CHECK(run.validator_status[1] == ValidatorStatus::Excluded);

    // The offending transaction died without touching state or collecting fees.
    bool found_noop_abort = false;
    for (const RoundEntry& e : run.rounds_log) {
        if (e.block.proposer != 1) continue;
        for (const ExecOutcome& out : e.outcomes)
            if (out.status == ExecStatus::Aborted && out.charged == 0 && out.effect_writes.empty())
                found_noop_abort = true;
    }
    CHECK(found_noop_abort);

    for (const RoundEntry& e : run.rounds_log)
        if (e.round > run.exclusions[0].detected_round) CHECK(e.proposer != 1);
}

TEST_CASE("uniform rotation only ever picks live validators and is seed-stable") {
    SimConfig cfg = honest_config(Mode::Coupled, BuilderKind::Knapsack, 40);
    cfg.rotation = Rotation::UniformSeeded;
    RunRecord a = run_simulation(cfg);
    RunRecord b = run_simulation(cfg);
    for (std::size_t i = 0; i < a.rounds_log.size(); ++i) {
        CHECK(a.rounds_log[i].proposer == b.rounds_log[i].proposer);
        CHECK(a.rounds_log[i].proposer < cfg.validators);
    }
}

TEST_CASE("scenario configs parse from the documented file format") {
    const char* text =
        "# sample\n"
        "[mode]\n"
        "mode = decoupled\n"
        "rounds = 12\n"
        "seed = 42\n"
        "gas_cap = 1.0\n"
        "lag = 2\n"
        "builder = greedy-est\n"
        "cost_model = full-estimate\n"
        "[timing]\n"
        "delta_e_ms = 250\n"
        "delta_c_ms = 600\n"
        "delta_b_ms = 150\n"
        "[validators]\n"
        "count = 4\n"
        "rotation = round-robin\n"
        "[workload]\n"
        "rate = 6\n"
        "gas = 1.0:3,0.5:1\n"
        "price_lo = 5\n"
        "price_hi = 15\n"
        "[adversary]\n"
        "kind = none\n";
    SimConfig cfg = parse_config_text(text);
    CHECK(cfg.mode == Mode::Decoupled);
    CHECK(cfg.rounds == 12);
    CHECK(cfg.seed == 42);
    CHECK(cfg.gas_cap_micro == kGasUnit);
    CHECK(cfg.cost_model.kind == CostModelKind::FullEstimate);
    CHECK(cfg.timing.delta_e_ms == 250);
    CHECK(cfg.workload.gas_dist.size() == 2);
    CHECK(cfg.workload.gas_dist[0].micro == kGasUnit);
    CHECK(cfg.workload.gas_dist[1].micro == 500'000);
    RunRecord run = run_simulation(cfg); // parses into something runnable
    CHECK(run.violations.empty());
}

TEST_CASE("config files without a seed are refused") {
    CHECK_THROWS_AS(parse_config_text("[mode]\nmode = coupled\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[mode]\nseed = 1\nnot a kv line\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[mode]\nseed = 1\nbogus_key = 3\n"), ConfigError);
}
