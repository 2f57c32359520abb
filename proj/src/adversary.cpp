#include "chainsim/adversary.hpp"

#include <algorithm>

#include "chainsim/rng.hpp"
#include "chainsim/validate.hpp"

namespace chainsim {

AccountPlan make_account_plan(const SimConfig& cfg) {
    AccountPlan plan;
    plan.validators = cfg.validators;
    const WorkloadSpec& w = cfg.workload;
    plan.honest_pool = w.fresh_accounts
                           ? w.initial_burst + w.honest_rate * static_cast<std::uint32_t>(cfg.rounds)
                           : w.honest_accounts;
    if (plan.honest_pool == 0) plan.honest_pool = 1;
    return plan;
}

SimConfig finalize_config(SimConfig cfg) {
    AccountPlan plan = make_account_plan(cfg);
    if (cfg.layout.num_accounts == 0) {
        cfg.layout.num_accounts = plan.num_accounts();
        cfg.layout.num_data_cells = 2 + plan.honest_pool + 2;
    }
    validate_config(cfg);
    return cfg;
}

namespace {

class ScenarioWorkload final : public WorkloadGenerator {
  public:
    explicit ScenarioWorkload(const SimConfig& cfg)
        : cfg_(cfg), spec_(cfg.workload), plan_(make_account_plan(cfg)) {
        if (spec_.adversary == AdversaryKind::Gaslight || spec_.adversary == AdversaryKind::FundDrain)
            adversary_accounts_ = {plan_.adversary_primary(), plan_.adversary_decoy()};
        else if (spec_.adversary == AdversaryKind::RationalValidator)
            adversary_accounts_ = {spec_.rational_validator};
    }

    std::vector<Transaction> arrivals(std::uint64_t round) override {
        std::vector<Transaction> out = honest_batch(round);
        switch (spec_.adversary) {
            case AdversaryKind::None: break;
            case AdversaryKind::Gaslight: gaslight_batch(round, out); break;
            case AdversaryKind::FundDrain: drain_batch(round, out); break;
            case AdversaryKind::RationalValidator: rational_batch(round, out); break;
        }
        return out;
    }

    void fund(StateSnapshot& st) const override {
        for (std::uint32_t k = 0; k < plan_.honest_pool; ++k)
            st.set(plan_.honest_account(k), spec_.initial_balance);
        if (spec_.adversary == AdversaryKind::FundDrain)
            st.set(plan_.adversary_primary(), spec_.drain_balance);
        // The gaslight adversary starts unfunded: its setup and junk cost nothing.
    }

    bool proposer_includes(std::uint32_t validator, const Transaction& tx) const override {
        if (spec_.adversary != AdversaryKind::RationalValidator) return true;
        if (validator != spec_.rational_validator) return true;
        return !junk_ids_.contains(tx.id);
    }

    bool is_attack_tx(TxId id) const override { return junk_ids_.contains(id); }

    const std::set<AccountId>& adversary_accounts() const override { return adversary_accounts_; }

  private:
    Transaction base_tx(AccountId sender, std::int64_t price, std::int64_t est_micro,
                        std::uint64_t round) {
        Transaction tx;
        tx.id = next_id_++;
        tx.sender = sender;
        tx.price = price;
        tx.est = GasAmount{est_micro};
        tx.submit_round = round;
        tx.declared_reads.insert(sender);
        tx.declared_writes.insert(sender);
        return tx;
    }

    std::vector<Transaction> honest_batch(std::uint64_t round) {
        std::vector<Transaction> out;
        Rng rng = derive_rng(cfg_.seed, "honest", round);
        std::uint32_t count = spec_.honest_rate + (round == 0 ? spec_.initial_burst : 0);
        std::uint32_t total_weight = 0;
        for (const GasBucket& b : spec_.gas_dist) total_weight += b.weight;
        for (std::uint32_t i = 0; i < count; ++i) {
            std::uint32_t slot = spec_.fresh_accounts
                                     ? honest_counter_
                                     : static_cast<std::uint32_t>(rng.uniform(0, plan_.honest_pool - 1));
            ++honest_counter_;
            std::int64_t gas = spec_.gas_dist.front().micro;
            if (total_weight > 0) {
                std::uint64_t pick = rng.uniform(0, total_weight - 1);
                for (const GasBucket& b : spec_.gas_dist) {
                    if (pick < b.weight) { gas = b.micro; break; }
                    pick -= b.weight;
                }
            }
            std::int64_t est = gas;
            if (spec_.est_policy == EstPolicy::Factor)
                est = std::min<std::int64_t>(kGasUnit, gas * spec_.est_factor_micro / kGasUnit);
            std::int64_t price = rng.uniform_i64(spec_.price_lo, spec_.price_hi);

            Transaction tx = base_tx(plan_.honest_account(slot % plan_.honest_pool), price, est, round);
            Address target = spec_.conflict_all ? plan_.hot_cell(cfg_.layout)
                                                : plan_.honest_cell(cfg_.layout, slot % plan_.honest_pool);
            Step step;
            step.gas_cost = GasAmount{gas};
            step.effects.push_back(WriteCell{target, static_cast<std::int64_t>(round + 1)});
            tx.steps.push_back(std::move(step));
            tx.declared_writes.insert(target);
            if (spec_.conflict_all) tx.declared_reads.insert(target);
            out.push_back(std::move(tx));
        }
        return out;
    }

    //! Junk that looks like est-worth of work but exits free once the trigger
    //! cell is set; until then its path really does cost the estimate.
    Transaction make_junk(AccountId sender, std::uint64_t round) {
        Transaction tx = base_tx(sender, spec_.junk_price, spec_.junk_est_micro, round);
        Address trigger = plan_.trigger_cell(cfg_.layout);
        Step gate;
        gate.guard = Guard{trigger, Cmp::Ge, 1};
        gate.gas_cost = GasAmount{0};
        tx.steps.push_back(std::move(gate));
        Step burn;
        burn.gas_cost = GasAmount{spec_.junk_est_micro};
        tx.steps.push_back(std::move(burn));
        tx.declared_reads.insert(trigger);
        junk_ids_.insert(tx.id);
        return tx;
    }

    Transaction make_setup(AccountId sender, std::uint64_t round) {
        Transaction tx = base_tx(sender, spec_.junk_price, 0, round);
        Address trigger = plan_.trigger_cell(cfg_.layout);
        Step set;
        set.gas_cost = GasAmount{0};
        set.effects.push_back(WriteCell{trigger, 1});
        tx.steps.push_back(std::move(set));
        tx.declared_writes.insert(trigger);
        return tx;
    }

    //! Decoy set: genuinely expensive transactions the state-aware oracle
    //! would pick; priced under the honest floor so the victim never does.
    void decoy_batch(std::uint64_t round, std::vector<Transaction>& out) {
        std::int64_t remaining = cfg_.gas_cap_micro;
        while (remaining > 0) {
            std::int64_t gas = std::min<std::int64_t>(kGasUnit, remaining);
            Transaction tx = base_tx(plan_.adversary_decoy(), spec_.decoy_price, gas, round);
            Step burn;
            burn.gas_cost = GasAmount{gas};
            tx.steps.push_back(std::move(burn));
            out.push_back(std::move(tx));
            remaining -= gas;
        }
    }

    void gaslight_batch(std::uint64_t round, std::vector<Transaction>& out) {
        if (round == 0) {
            out.push_back(make_setup(plan_.adversary_primary(), round));
            decoy_batch(round, out);
        }
        if (round >= spec_.attack_from_round) {
            for (std::uint32_t i = 0; i < cfg_.validators; ++i)
                out.push_back(make_junk(plan_.adversary_primary(), round));
            decoy_batch(round, out);
        }
    }

    void drain_batch(std::uint64_t round, std::vector<Transaction>& out) {
        if (round == spec_.drain_round) {
            Transaction tx = base_tx(plan_.adversary_primary(), spec_.junk_price, 0, round);
            Step move;
            move.gas_cost = GasAmount{0};
            move.effects.push_back(Transfer{plan_.drain_sink(), spec_.drain_balance});
            tx.steps.push_back(std::move(move));
            tx.declared_writes.insert(plan_.drain_sink());
            out.push_back(std::move(tx));
        }
        if (round >= spec_.drain_attack_from) {
            for (std::uint32_t i = 0; i < spec_.drain_attack_txs; ++i) {
                Transaction tx = base_tx(plan_.adversary_primary(), spec_.drain_attack_price,
                                         spec_.drain_attack_est_micro, round);
                Step idle;
                idle.gas_cost = GasAmount{0};
                tx.steps.push_back(std::move(idle));
                junk_ids_.insert(tx.id);
                out.push_back(std::move(tx));
            }
        }
    }

    void rational_batch(std::uint64_t round, std::vector<Transaction>& out) {
        AccountId self = spec_.rational_validator;
        if (round == 0) out.push_back(make_setup(self, round));
        if (round >= spec_.attack_from_round)
            for (std::uint32_t i = 0; i < cfg_.validators; ++i)
                out.push_back(make_junk(self, round));
    }

    SimConfig cfg_;
    WorkloadSpec spec_;
    AccountPlan plan_;
    TxId next_id_{0};
    std::uint32_t honest_counter_{0};
    std::set<TxId> junk_ids_;
    std::set<AccountId> adversary_accounts_;
};

} // namespace

std::unique_ptr<WorkloadGenerator> make_workload(const SimConfig& cfg) {
    return std::make_unique<ScenarioWorkload>(cfg);
}

} // namespace chainsim
