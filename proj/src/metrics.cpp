#include "chainsim/metrics.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "chainsim/knapsack.hpp"

namespace chainsim {

namespace {

std::int64_t executed_gas_micro(const RoundEntry& entry) {
    std::int64_t total = 0;
    for (const ExecOutcome& out : entry.outcomes)
        if (out.status == ExecStatus::Executed) total += out.gas_consumed.micro;
    return total;
}

KnapsackResult optimal_block(const std::vector<Transaction>& mempool, const StateSnapshot& st,
                             std::uint32_t validator_cap, std::int64_t gas_cap_micro,
                             const CostModel* fee_model) {
    std::vector<KnapsackItem> items;
    items.reserve(mempool.size());
    for (std::size_t i = 0; i < mempool.size(); ++i) {
        const Transaction& tx = mempool[i];
        std::int64_t gas = gas_actual(tx, st).micro;
        std::int64_t value = fee_model ? cost(tx, st, *fee_model) : gas;
        items.push_back({tx.id, gas, value, i});
    }
    return solve_knapsack(items, gas_cap_micro, static_cast<int>(validator_cap));
}

} // namespace

Rational cr_res(const RoundEntry& entry, std::int64_t gas_cap_micro) {
    return ratio(executed_gas_micro(entry), gas_cap_micro);
}

Rational cr_res(const Block& b, const StateSnapshot& pre, const CostModel& model,
                std::int64_t gas_cap_micro) {
    BlockExecResult res = execute_block(b, pre, model);
    std::int64_t total = 0;
    for (const ExecOutcome& out : res.outcomes)
        if (out.status == ExecStatus::Executed) total += out.gas_consumed.micro;
    return ratio(total, gas_cap_micro);
}

Rational cr_res_star(const Block& b, const std::vector<Transaction>& mempool,
                     const StateSnapshot& st, std::uint32_t validator_cap,
                     std::int64_t gas_cap_micro) {
    std::int64_t block_gas = 0;
    for (const Transaction& tx : b.txs) block_gas += gas_actual(tx, st).micro;
    KnapsackResult best = optimal_block(mempool, st, validator_cap, gas_cap_micro, nullptr);
    if (best.total_value == 0) return block_gas == 0 ? Rational{1, 1} : Rational{0, 1};
    return ratio(block_gas, best.total_value);
}

Rational cr_rew_star(const Block& b, const std::vector<Transaction>& mempool,
                     const StateSnapshot& st, std::uint32_t validator_cap,
                     std::int64_t gas_cap_micro, const CostModel& model) {
    std::int64_t block_fee = 0;
    for (const Transaction& tx : b.txs) block_fee += cost(tx, st, model);
    KnapsackResult best = optimal_block(mempool, st, validator_cap, gas_cap_micro, &model);
    if (best.total_value == 0) return block_fee == 0 ? Rational{1, 1} : Rational{0, 1};
    return ratio(block_fee, best.total_value);
}

Rational burned_ratio(const RoundEntry& entry, std::int64_t gas_cap_micro) {
    return ratio(entry.gas_consumed_micro, gas_cap_micro);
}

BlockMetrics block_metrics(const RunRecord& run, std::size_t round_index) {
    const RoundEntry& entry = run.rounds_log.at(round_index);
    if (entry.exec_round < 0) throw std::runtime_error("metrics: block not yet executed");
    BlockMetrics m;
    m.cr_res = cr_res(entry, run.config.gas_cap_micro);
    m.burned_ratio = burned_ratio(entry, run.config.gas_cap_micro);
    m.cr_res_star = cr_res_star(entry.block, entry.mempool_at_build, entry.pre_exec_state,
                                run.config.validators, run.config.gas_cap_micro);
    m.cr_rew_star = cr_rew_star(entry.block, entry.mempool_at_build, entry.pre_exec_state,
                                run.config.validators, run.config.gas_cap_micro,
                                run.config.cost_model);
    for (const ExecOutcome& out : entry.outcomes) m.proposer_reward += out.charged;
    return m;
}

Rational throughput_gas_per_round(const RunRecord& run) {
    if (run.rounds_log.empty()) throw std::runtime_error("metrics: empty run");
    std::int64_t total = 0;
    for (const RoundEntry& e : run.rounds_log)
        if (e.exec_round >= 0) total += executed_gas_micro(e);
    return ratio(total, kGasUnit * static_cast<std::int64_t>(run.rounds_log.size()));
}

Rational throughput_gas_per_second(const RunRecord& run) {
    return throughput_gas_per_round(run) * ratio(1000, run.slot_ms);
}

Rational latency_rounds(const RunRecord& run, TxId tx) {
    for (const RoundEntry& e : run.rounds_log) {
        if (e.exec_round < 0 || !e.block.contains(tx)) continue;
        for (const Transaction& t : e.block.txs)
            if (t.id == tx)
                return ratio(e.exec_round - static_cast<std::int64_t>(t.submit_round) + 1, 1);
    }
    throw std::runtime_error("metrics: transaction never executed in this run");
}

Rational mean_latency_rounds(const RunRecord& run) {
    if (run.rounds_log.empty()) throw std::runtime_error("metrics: empty run");
    std::int64_t total = 0;
    std::int64_t count = 0;
    for (const RoundEntry& e : run.rounds_log) {
        if (e.exec_round < 0) continue;
        for (const Transaction& t : e.block.txs) {
            total += e.exec_round - static_cast<std::int64_t>(t.submit_round) + 1;
            ++count;
        }
    }
    if (count == 0) throw std::runtime_error("metrics: no executed transactions");
    return ratio(total, count);
}

Rational mean_latency_ms(const RunRecord& run) {
    return mean_latency_rounds(run) * ratio(run.slot_ms, 1);
}

FairnessReport fairness(const RunRecord& run, Rational eps) {
    FairnessReport report;
    report.rewards = run.rewards;
    report.epsilon = to_double(eps);
    for (const RoundEntry& e : run.rounds_log)
        if (e.exec_round >= 0) ++report.executed_blocks;
    report.full_rotations = run.config.validators ? report.executed_blocks / run.config.validators : 0;

    const std::size_t n = report.rewards.size();
    report.ratios.assign(n, std::vector<double>(n, 1.0));

    bool all_zero = true;
    for (std::int64_t r : report.rewards)
        if (r != 0) all_zero = false;
    if (all_zero) {
        report.fair = true;
        return report;
    }

    report.fair = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t ri = report.rewards[i];
            std::int64_t rj = report.rewards[j];
            if (rj == 0) {
                report.ratios[i][j] = ri == 0 ? 1.0 : std::numeric_limits<double>::infinity();
                if (i != j && ri != 0) {
                    report.infinite_ratio = true;
                    report.fair = false;
                }
                continue;
            }
            report.ratios[i][j] = static_cast<double>(ri) / static_cast<double>(rj);
            if (i == j) continue;
            // |ri/rj - 1| <= eps  <=>  den*|ri - rj| <= num*rj  (exact)
            __int128 lhs = static_cast<__int128>(eps.den) * (ri > rj ? ri - rj : rj - ri);
            __int128 rhs = static_cast<__int128>(eps.num) * rj;
            if (lhs > rhs) report.fair = false;
            double dev = std::abs(report.ratios[i][j] - 1.0);
            report.max_deviation = std::max(report.max_deviation, dev);
        }
    }
    return report;
}

std::int64_t total_adversary_charged(const RunRecord& run) { return run.adversary_charged; }

void write_rounds_csv(const RunRecord& run, std::ostream& os) {
    os << "round,proposer,txs,block_gas_est,block_gas_actual,cr_res,cr_res_star,attacked,"
          "congested_est,congested_gas,exec_round,mempool_after";
    for (std::uint32_t v = 0; v < run.config.validators; ++v) os << ",rho_" << v;
    os << "\n";
    for (const RoundEntry& e : run.rounds_log) {
        std::string res = "";
        std::string star = "";
        if (e.exec_round >= 0) {
            res = to_decimal(cr_res(e, run.config.gas_cap_micro));
            star = to_decimal(cr_res_star(e.block, e.mempool_at_build, e.pre_exec_state,
                                          run.config.validators, run.config.gas_cap_micro));
        }
        os << e.round << ',' << e.proposer << ',' << e.block.txs.size() << ',' << e.est_total_micro
           << ',' << (e.exec_round >= 0 ? std::to_string(executed_gas_micro(e)) : std::string())
           << ',' << res << ',' << star << ',' << (e.attacked ? 1 : 0) << ','
           << (e.congested_est ? 1 : 0) << ',' << (e.congested_gas ? 1 : 0) << ',' << e.exec_round
           << ',' << e.mempool_size_after;
        for (std::int64_t r : e.rewards_after) os << ',' << r;
        os << "\n";
    }
}

void write_outcomes_csv(const RunRecord& run, std::ostream& os) {
    os << "round,tx_id,status,gas_consumed,charged,uncollected\n";
    for (const RoundEntry& e : run.rounds_log) {
        for (const ExecOutcome& out : e.outcomes)
            os << e.round << ',' << out.tx_id << ',' << to_string(out.status) << ','
               << out.gas_consumed.micro << ',' << out.charged << ',' << out.uncollected << "\n";
    }
}

void write_summary(const RunRecord& run, std::ostream& os) {
    const SimConfig& cfg = run.config;
    os << "mode=" << to_string(cfg.mode) << " builder=" << to_string(cfg.builder)
       << " rounds=" << cfg.rounds << " validators=" << cfg.validators
       << " gas_cap=" << to_decimal(ratio(cfg.gas_cap_micro, kGasUnit), 3) << " seed=" << cfg.seed
       << "\n";
    os << "slot_ms=" << run.slot_ms << " beta=" << to_string(run.speedup)
       << " exec_delay=" << cfg.exec_delay() << "\n";

    std::uint64_t executed = 0;
    std::uint64_t attacked = 0;
    bool have_cr = false;
    Rational min_cr{0, 1};
    Rational max_cr{0, 1};
    for (const RoundEntry& e : run.rounds_log) {
        if (e.exec_round < 0) continue;
        ++executed;
        if (e.attacked) ++attacked;
        Rational r = cr_res(e, cfg.gas_cap_micro);
        if (!have_cr || r < min_cr) min_cr = r;
        if (!have_cr || max_cr < r) max_cr = r;
        have_cr = true;
    }
    os << "blocks_built=" << run.rounds_log.size() << " blocks_executed=" << executed
       << " attacked_blocks=" << attacked << "\n";
    if (have_cr)
        os << "cr_res_min=" << to_string(min_cr) << " cr_res_max=" << to_string(max_cr) << "\n";
    if (executed > 0) {
        os << "throughput_gas_per_round=" << to_string(throughput_gas_per_round(run)) << " ("
           << to_decimal(throughput_gas_per_round(run), 4) << ")\n";
        os << "throughput_gas_per_second=" << to_decimal(throughput_gas_per_second(run), 4) << "\n";
        try {
            os << "mean_latency_rounds=" << to_decimal(mean_latency_rounds(run), 4)
               << " mean_latency_ms=" << to_decimal(mean_latency_ms(run), 2) << "\n";
        } catch (const std::runtime_error&) {
            os << "mean_latency_rounds=n/a (no executed transactions)\n";
        }
    }
    os << "submitted=" << run.submitted_txs << " rejected=" << run.rejected_txs
       << " final_mempool=" << run.final_mempool.size() << "\n";
    os << "adversary_charged=" << run.adversary_charged
       << " adversary_uncollected=" << run.adversary_uncollected
       << " total_uncollected=" << run.total_uncollected << "\n";

    FairnessReport fr = fairness(run);
    os << "fairness=" << (fr.fair ? "fair" : "unfair")
       << " rotations=" << fr.full_rotations
       << (fr.infinite_ratio ? " (a validator earned nothing while another earned)" : "") << "\n";
    os << "rewards=";
    for (std::size_t i = 0; i < run.rewards.size(); ++i)
        os << (i ? "," : "") << run.rewards[i];
    os << "\n";
    if (!run.exclusions.empty()) {
        os << "excluded_validators=";
        for (std::size_t i = 0; i < run.exclusions.size(); ++i)
            os << (i ? "," : "") << run.exclusions[i].validator << "@round"
               << run.exclusions[i].detected_round;
        os << "\n";
    }
    for (const std::string& v : run.violations) os << "violation: " << v << "\n";
}

void write_fairness_report(const RunRecord& run, std::ostream& os) {
    FairnessReport fr = fairness(run);
    os << "validator,reward,status";
    for (std::size_t v = 0; v < run.rewards.size(); ++v) os << ",ratio_vs_" << v;
    os << "\n";
    for (std::size_t v = 0; v < run.rewards.size(); ++v) {
        const char* status = run.validator_status[v] == ValidatorStatus::Excluded ? "excluded"
                             : run.validator_status[v] == ValidatorStatus::Rational ? "rational"
                                                                                    : "honest";
        os << v << ',' << run.rewards[v] << ',' << status;
        for (std::size_t j = 0; j < run.rewards.size(); ++j) {
            std::int64_t rj = run.rewards[j];
            if (rj == 0) os << (run.rewards[v] == 0 ? ",1.0000" : ",inf");
            else os << ',' << to_decimal(ratio(run.rewards[v], rj), 4);
        }
        os << "\n";
    }
    os << "verdict," << (fr.fair ? "fair" : "unfair") << ",eps=" << fr.epsilon << "\n";
}

} // namespace chainsim
