#include "chainsim/protocol.hpp"

#include <algorithm>
#include <set>

#include "chainsim/access.hpp"
#include "chainsim/knapsack.hpp"
#include "chainsim/rng.hpp"
#include "chainsim/validate.hpp"

namespace chainsim {

namespace {

class ProposerRotation {
  public:
    ProposerRotation(const SimConfig& cfg, const std::vector<ValidatorStatus>* status)
        : cfg_(cfg), status_(status) {}

    std::uint32_t pick(std::uint64_t round) {
        if (cfg_.rotation == Rotation::RoundRobin) {
            for (std::uint32_t probe = 0; probe < cfg_.validators; ++probe) {
                std::uint32_t v = next_;
                next_ = (next_ + 1) % cfg_.validators;
                if ((*status_)[v] != ValidatorStatus::Excluded) return v;
            }
            return next_; // everyone excluded: keep the rotation turning
        }
        std::vector<std::uint32_t> alive;
        for (std::uint32_t v = 0; v < cfg_.validators; ++v)
            if ((*status_)[v] != ValidatorStatus::Excluded) alive.push_back(v);
        if (alive.empty()) return 0;
        Rng rng = derive_rng(cfg_.seed, "proposer", round);
        return alive[rng.uniform(0, alive.size() - 1)];
    }

  private:
    const SimConfig& cfg_;
    const std::vector<ValidatorStatus>* status_;
    std::uint32_t next_{0};
};

bool est_witness(const std::vector<Transaction>& mempool, const SimConfig& cfg) {
    if (mempool.size() < cfg.validators) return false;
    std::vector<std::int64_t> ests;
    ests.reserve(mempool.size());
    for (const Transaction& tx : mempool) ests.push_back(tx.est.micro);
    return subset_sum_exists(ests, cfg.gas_cap_micro, static_cast<int>(cfg.validators));
}

bool gas_witness(const std::vector<Transaction>& mempool, const StateSnapshot& st,
                 const SimConfig& cfg) {
    if (mempool.size() < cfg.validators) return false;
    std::vector<std::int64_t> gas;
    gas.reserve(mempool.size());
    for (const Transaction& tx : mempool) gas.push_back(gas_actual(tx, st).micro);
    return subset_sum_exists(gas, cfg.gas_cap_micro, static_cast<int>(cfg.validators));
}

struct Engine {
    const SimConfig& cfg;
    WorkloadGenerator& workload;
    RunRecord run;
    Mempool mempool;
    StateSnapshot state;
    std::vector<ValidatorStatus> status;
    std::vector<std::int64_t> rewards;

    Engine(const SimConfig& c, WorkloadGenerator& w) : cfg(c), workload(w) {
        status.assign(cfg.validators, ValidatorStatus::Honest);
        if (cfg.workload.adversary == AdversaryKind::RationalValidator)
            status[cfg.workload.rational_validator] = ValidatorStatus::Rational;
        rewards.assign(cfg.validators, 0);
        workload.fund(state);
        run.config = cfg;
        run.speedup = beta(cfg.timing);
        run.slot_ms = cfg.slot_ms();
    }

    //! Whether the settled balance covers the assessed fee. Only state-aware
    //! proposers may check this; the decoupled builder cannot.
    bool affordable(const Transaction& tx, const StateSnapshot& settled) const {
        return cost(tx, settled, cfg.cost_model) <= settled.get(tx.sender);
    }

    bool verified_at_execution(const Transaction& tx, const Block& b) const {
        AccessSets acc = actual_access_sets(tx, state);
        return covers(tx.declared_reads, acc.reads) && covers(tx.declared_writes, acc.writes) &&
               covers(b.declared_write_union, acc.writes);
    }

    void execute_due(std::uint64_t current_round) {
        const std::uint32_t delay = cfg.exec_delay();
        if (current_round < delay) return;
        const std::uint64_t j = current_round - delay;
        RoundEntry& entry = run.rounds_log[j];
        entry.exec_round = static_cast<std::int64_t>(current_round);
        entry.pre_exec_state = state;
        entry.congested_gas = gas_witness(entry.mempool_at_build, state, cfg);

        for (const Transaction& tx : entry.block.txs) {
            ExecOutcome out;
            if (cfg.mode == Mode::Partial && !verified_at_execution(tx, entry.block)) {
                // Detected misdeclaration: the transaction dies without touching
                // state, and its proposer leaves the rotation for good.
                out.tx_id = tx.id;
                out.sender = tx.sender;
                out.status = ExecStatus::Aborted;
                out.gas_consumed = tx.est;
                if (status[entry.block.proposer] != ValidatorStatus::Excluded) {
                    status[entry.block.proposer] = ValidatorStatus::Excluded;
                    run.exclusions.push_back({entry.block.proposer, current_round});
                }
            } else {
                out = execute_tx_inplace(tx, state, cfg.cost_model, entry.block.proposer);
            }
            entry.gas_consumed_micro += out.gas_consumed.micro;
            rewards[entry.block.proposer] += out.charged;
            run.total_uncollected += out.uncollected;
            if (workload.adversary_accounts().contains(tx.sender)) {
                run.adversary_charged += out.charged;
                run.adversary_uncollected += out.uncollected;
            }
            entry.outcomes.push_back(std::move(out));
        }
        state.settled_round = j + 1;
    }

    void round(std::uint64_t i, ProposerRotation& rotation) {
        std::vector<Transaction> batch = workload.arrivals(i);
        for (Transaction& tx : batch) {
            if (validate_transaction(tx, cfg.layout) != TxVerdict::Ok) {
                ++run.rejected_txs;
                continue;
            }
            ++run.submitted_txs;
            mempool.add(std::move(tx));
        }

        RoundEntry entry;
        entry.round = i;
        entry.finalize_round = i;
        entry.proposer = rotation.pick(i);
        entry.mempool_at_build = mempool.view();
        entry.congested_est = est_witness(entry.mempool_at_build, cfg);

        // Build view: rational proposers drop their own junk; state-aware
        // modes drop transactions whose settled balance cannot pay.
        std::vector<Transaction> view;
        for (const Transaction& tx : mempool.view()) {
            if (!workload.proposer_includes(entry.proposer, tx)) continue;
            if (cfg.mode != Mode::Decoupled && !affordable(tx, state)) continue;
            view.push_back(tx);
        }

        std::set<Address> pending_writes;
        if (cfg.mode == Mode::Partial) {
            const std::uint32_t delay = cfg.exec_delay();
            for (std::uint64_t j = i > delay ? i - delay : 0; j < i; ++j) {
                const Block& pb = run.rounds_log[j].block;
                pending_writes.insert(pb.declared_write_union.begin(), pb.declared_write_union.end());
            }
        }

        BuildContext ctx;
        ctx.mode = cfg.mode == Mode::Coupled   ? BuildMode::Coupled
                   : cfg.mode == Mode::Partial ? BuildMode::Partial
                                               : BuildMode::Decoupled;
        ctx.mempool = &view;
        ctx.settled = &state;
        ctx.pending_writes = &pending_writes;
        ctx.validator_count = cfg.validators;
        ctx.gas_cap_micro = cfg.gas_cap_micro;
        ctx.round = i;
        ctx.proposer = entry.proposer;

        BuildResult built;
        switch (cfg.builder) {
            case BuilderKind::Knapsack: built = build_coupled_knapsack(ctx); break;
            case BuilderKind::GreedyEst: built = build_decoupled(ctx); break;
            case BuilderKind::Partial: built = build_partial(ctx); break;
        }
        if (cfg.mode == Mode::Partial && cfg.reorder_hot_enabled)
            built.block = reorder_hot(built.block, mempool.view(), state);
        if (cfg.mode == Mode::Partial && cfg.faulty_proposer &&
            entry.proposer == *cfg.faulty_proposer && !built.block.declared_write_union.empty()) {
            // Fault injection: this proposer certifies a write union that
            // omits one touched cell.
            built.block.declared_write_union.erase(std::prev(built.block.declared_write_union.end()));
        }

        entry.block = built.block;
        entry.mempool_empty = built.mempool_empty;
        entry.no_independent = built.no_independent;
        entry.nontriviality_shortfall = built.nontriviality_shortfall;
        entry.est_total_micro = built.block.total_est_micro();
        for (const Transaction& tx : built.block.txs)
            if (workload.is_attack_tx(tx.id)) entry.attacked = true;

        mempool.remove(entry.block.txs);
        entry.mempool_size_after = mempool.size();
        run.rounds_log.push_back(std::move(entry));

        execute_due(i);
        run.rounds_log[i].rewards_after = rewards;
    }

    RunRecord finish() {
        run.validator_status = status;
        run.rewards = rewards;
        for (const Transaction& tx : mempool.view()) run.final_mempool.push_back(tx.id);
        std::vector<std::string> problems = check_run(run);
        for (std::string& v : problems) run.violations.push_back(std::move(v));
        return std::move(run);
    }
};

} // namespace

RunRecord run_simulation(const SimConfig& raw_cfg, WorkloadGenerator& workload) {
    SimConfig cfg = finalize_config(raw_cfg);
    Engine engine(cfg, workload);
    ProposerRotation rotation(cfg, &engine.status);
    for (std::uint64_t i = 0; i < cfg.rounds; ++i) engine.round(i, rotation);
    return engine.finish();
}

RunRecord run_simulation(const SimConfig& raw_cfg) {
    SimConfig cfg = finalize_config(raw_cfg);
    std::unique_ptr<WorkloadGenerator> workload = make_workload(cfg);
    return run_simulation(cfg, *workload);
}

std::vector<std::string> check_run(const RunRecord& run) {
    std::vector<std::string> bad;

    // Mempool conservation: every accepted transaction sits in exactly one
    // block or the final mempool.
    std::set<TxId> seen;
    std::uint64_t placed = 0;
    for (const RoundEntry& e : run.rounds_log) {
        for (const Transaction& tx : e.block.txs) {
            if (!seen.insert(tx.id).second)
                bad.push_back("transaction included twice: " + std::to_string(tx.id));
            ++placed;
        }
    }
    for (TxId id : run.final_mempool) {
        if (!seen.insert(id).second)
            bad.push_back("transaction both included and pending: " + std::to_string(id));
        ++placed;
    }
    if (placed != run.submitted_txs)
        bad.push_back("mempool conservation: placed " + std::to_string(placed) + " of " +
                      std::to_string(run.submitted_txs));

    // One block per round, finalized in order, executed exactly exec_delay
    // rounds later whenever execution lands inside the run; block caps hold.
    const std::uint32_t delay = run.config.exec_delay();
    for (std::size_t i = 0; i < run.rounds_log.size(); ++i) {
        const RoundEntry& e = run.rounds_log[i];
        if (e.round != i || e.finalize_round != i)
            bad.push_back("round indexing broken at " + std::to_string(i));
        if (e.exec_round >= 0 && e.exec_round != static_cast<std::int64_t>(i + delay))
            bad.push_back("execution scheduled off its slot at round " + std::to_string(i));
        if (e.exec_round < 0 && i + delay < run.rounds_log.size())
            bad.push_back("execution missing for round " + std::to_string(i));
        if (e.block.txs.size() > run.config.validators)
            bad.push_back("block over the count cap at round " + std::to_string(i));
        if (run.config.mode == Mode::Decoupled && e.est_total_micro > run.config.gas_cap_micro)
            bad.push_back("block over the estimate cap at round " + std::to_string(i));
        if (run.config.mode == Mode::Coupled && e.exec_round >= 0) {
            std::int64_t gas = 0;
            for (const Transaction& tx : e.block.txs) gas += gas_actual(tx, e.pre_exec_state).micro;
            if (gas > run.config.gas_cap_micro)
                bad.push_back("block over the gas cap at round " + std::to_string(i));
        }
    }

    // Exclusion permanence.
    for (const Exclusion& ex : run.exclusions) {
        for (const RoundEntry& e : run.rounds_log)
            if (e.proposer == ex.validator && e.round > ex.detected_round)
                bad.push_back("excluded validator proposed again: " + std::to_string(ex.validator));
    }
    return bad;
}

} // namespace chainsim
