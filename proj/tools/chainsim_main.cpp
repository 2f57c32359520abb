#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "chainsim/casestudy.hpp"
#include "chainsim/metrics.hpp"
#include "chainsim/presets.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

int run_sim(const std::string& preset, const std::string& config_path, const std::string& out_dir,
            std::uint64_t seed_override, std::int64_t rounds_override) {
    using namespace chainsim;
    Scenario scenario;
    if (!preset.empty()) {
        scenario = make_preset(preset);
    } else {
        SimConfig cfg = parse_config_file(config_path);
        scenario = Scenario{std::filesystem::path(config_path).stem().string(), "config file run",
                            {{"run", cfg}}};
    }
    for (NamedRun& run : scenario.runs) {
        if (seed_override != 0) run.config.seed = seed_override;
        if (rounds_override > 0) run.config.rounds = static_cast<std::uint64_t>(rounds_override);
    }

    ScenarioResult result = run_scenario(scenario);
    std::vector<std::string> files = write_artifacts(result, out_dir);

    bool violated = false;
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const RunRecord& run = result.records[i];
        std::cout << "== " << scenario.runs[i].label << " ==\n";
        write_summary(run, std::cout);
        if (!run.violations.empty()) violated = true;
    }
    std::cout << "artifacts:\n";
    for (const std::string& f : files) std::cout << "  " << f << "\n";
    return violated ? kExitViolation : kExitOk;
}

int run_sweep(const std::string& preset, const std::string& seeds_csv, const std::string& out_dir,
              unsigned jobs) {
    using namespace chainsim;
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(seeds_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) seeds.push_back(std::stoull(tok));
    if (seeds.empty()) throw ConfigError("sweep: no seeds given");

    Scenario base = make_preset(preset);

    struct SeedOutcome {
        std::uint64_t seed;
        Rational throughput;
        Rational latency_ms;
        bool violated;
    };
    std::vector<std::future<SeedOutcome>> futures;
    unsigned in_flight = jobs == 0 ? 1 : jobs;
    std::vector<SeedOutcome> outcomes;
    for (std::size_t next = 0; next < seeds.size();) {
        while (futures.size() < in_flight && next < seeds.size()) {
            std::uint64_t seed = seeds[next++];
            futures.push_back(std::async(std::launch::async, [base, seed]() {
                Scenario s = base;
                for (NamedRun& r : s.runs) r.config.seed = seed;
                ScenarioResult res = run_scenario(s);
                const RunRecord& head = res.records.front();
                SeedOutcome out{seed, throughput_gas_per_round(head), Rational{0, 1}, false};
                try {
                    out.latency_ms = mean_latency_ms(head);
                } catch (const std::exception&) {
                }
                for (const RunRecord& r : res.records)
                    if (!r.violations.empty()) out.violated = true;
                return out;
            }));
        }
        for (auto& f : futures) outcomes.push_back(f.get());
        futures.clear();
    }

    std::filesystem::create_directories(out_dir);
    std::ofstream os(std::filesystem::path(out_dir) / "sweep.csv", std::ios::binary);
    os << "seed,throughput_gas_per_round,mean_latency_ms,violations\n";
    bool violated = false;
    Rational lo = outcomes.front().throughput;
    Rational hi = lo;
    Rational sum{0, 1};
    for (const SeedOutcome& o : outcomes) {
        os << o.seed << ',' << to_decimal(o.throughput, 4) << ',' << to_decimal(o.latency_ms, 2)
           << ',' << (o.violated ? 1 : 0) << "\n";
        if (o.throughput < lo) lo = o.throughput;
        if (hi < o.throughput) hi = o.throughput;
        sum = sum + o.throughput;
        violated = violated || o.violated;
        std::cout << "seed " << o.seed << ": throughput=" << to_decimal(o.throughput, 4)
                  << " latency_ms=" << to_decimal(o.latency_ms, 2) << "\n";
    }
    Rational mean = sum * ratio(1, static_cast<std::int64_t>(outcomes.size()));
    std::cout << "throughput min=" << to_decimal(lo, 4) << " mean=" << to_decimal(mean, 4)
              << " max=" << to_decimal(hi, 4) << " over " << outcomes.size() << " seeds\n";
    return violated ? kExitViolation : kExitOk;
}

int run_trace_stats(const std::string& input, const std::string& out_path, double beta_in) {
    using namespace chainsim;
    TraceIngest ingest = ingest_trace(input);
    OverestimationStats stats = overestimation_stats(ingest.rows);
    std::string report = stats_report_json(stats, beta_in);
    if (!out_path.empty()) {
        std::filesystem::path p(out_path);
        if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
        std::ofstream os(p, std::ios::binary);
        os << report << "\n";
    }
    std::cout << "rows=" << stats.usable_rows << " zero_use=" << stats.zero_use_rows
              << " malformed=" << ingest.malformed_rows
              << " limit_violations=" << ingest.invariant_rows << "\n";
    std::cout << "mean overestimation: " << stats.mean_pct << "%\n";
    std::cout << "ascending percentiles: p10=" << stats.p10 << "% p25=" << stats.p25
              << "% p50=" << stats.p50 << "% p75=" << stats.p75 << "% p90=" << stats.p90 << "%\n";
    std::cout << "descending percentiles: p10=" << stats.p90 << "% p25=" << stats.p75
              << "% (top-overestimators first)\n";
    std::cout << "factor (ratio of sums): " << stats.factor_ratio_of_sums()
              << "  factor (mean of ratios): " << stats.factor_mean_of_ratios() << "\n";
    std::cout << "effective beta from " << beta_in << ": ratio-of-sums "
              << stats.effective_beta(beta_in) << ", mean-of-ratios "
              << stats.effective_beta_mean_of_ratios(beta_in) << "\n";
    return kExitOk;
}

int run_trace_econ(const chainsim::EconParams& params, const std::string& out_path) {
    using namespace chainsim;
    EconReport report = attack_economics(params);
    std::string json = econ_report_json(params, report);
    if (!out_path.empty()) {
        std::filesystem::path p(out_path);
        if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
        std::ofstream os(p, std::ios::binary);
        os << json << "\n";
    }
    std::cout << "captured_rewards_usd=" << report.captured_rewards_usd << "\n"
              << "attacker_cost_eth=" << report.attacker_cost_eth << "\n"
              << "attacker_cost_usd=" << report.attacker_cost_usd << "\n"
              << "net_usd=" << report.net_usd << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic round simulator for coupled, decoupled and partially coupled chains"};
    app.require_subcommand(1);

    // sim
    CLI::App* sim = app.add_subcommand("sim", "run simulations");
    sim->require_subcommand(1);

    std::string preset, config_path, out_dir = "out";
    std::uint64_t seed_override = 0;
    std::int64_t rounds_override = 0;
    CLI::App* sim_run = sim->add_subcommand("run", "run one scenario");
    sim_run->add_option("--preset", preset, "built-in scenario name");
    sim_run->add_option("--config", config_path, "scenario config file");
    sim_run->add_option("--out", out_dir, "artifact directory");
    sim_run->add_option("--seed", seed_override, "override the scenario seed");
    sim_run->add_option("--rounds", rounds_override, "override the round count");

    std::string sweep_preset, seeds_csv = "1,2,3,4,5";
    std::string sweep_out = "out";
    unsigned jobs = 4;
    CLI::App* sim_sweep = sim->add_subcommand("sweep", "run a preset across seeds");
    sim_sweep->add_option("--preset", sweep_preset, "built-in scenario name")->required();
    sim_sweep->add_option("--seeds", seeds_csv, "comma-separated seed list");
    sim_sweep->add_option("--out", sweep_out, "artifact directory");
    sim_sweep->add_option("--jobs", jobs, "parallel runs");

    // trace
    CLI::App* trace = app.add_subcommand("trace", "analyze transaction traces");
    trace->require_subcommand(1);

    std::string trace_input, trace_out;
    double beta_in = 5.0;
    CLI::App* trace_stats = trace->add_subcommand("stats", "overestimation statistics from a CSV trace");
    trace_stats->add_option("--input", trace_input, "trace CSV path")->required();
    trace_stats->add_option("--out", trace_out, "JSON report path");
    trace_stats->add_option("--beta", beta_in, "pipeline speed-up to dilute");

    chainsim::EconParams econ;
    std::string econ_out;
    CLI::App* trace_econ = trace->add_subcommand("econ", "attack economics model");
    trace_econ->add_option("--rewards-usd", econ.total_rewards_usd, "annual execution-layer rewards");
    trace_econ->add_option("--alpha", econ.alpha, "adversary proposer share");
    trace_econ->add_option("--factor", econ.factor, "overestimation factor");
    trace_econ->add_option("--priority-fee-gwei", econ.priority_fee_gwei, "inclusion fee");
    trace_econ->add_option("--attack-tx-gas", econ.attack_tx_gas, "gas per attack transaction");
    trace_econ->add_option("--blocks-per-year", econ.blocks_per_year, "blocks per year");
    trace_econ->add_option("--eth-price-usd", econ.eth_price_usd, "conversion rate");
    trace_econ->add_option("--silent-factor", econ.silent_factor, "fraction of block space used");
    trace_econ->add_option("--out", econ_out, "JSON report path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim_run->parsed()) {
            if (preset.empty() == config_path.empty()) {
                std::cerr << "sim run: give exactly one of --preset or --config\n";
                return kExitUsage;
            }
            return run_sim(preset, config_path, out_dir, seed_override, rounds_override);
        }
        if (sim_sweep->parsed()) return run_sweep(sweep_preset, seeds_csv, sweep_out, jobs);
        if (trace_stats->parsed()) return run_trace_stats(trace_input, trace_out, beta_in);
        if (trace_econ->parsed()) return run_trace_econ(econ, econ_out);
    } catch (const chainsim::TraceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const chainsim::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
