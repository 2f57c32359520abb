#pragma once

#include <memory>
#include <set>
#include <vector>

#include "chainsim/config.hpp"
#include "chainsim/state.hpp"
#include "chainsim/types.hpp"

namespace chainsim {

//! Where the scenario's accounts and special cells live inside the layout.
//! Validators hold accounts [0, N); honest senders follow; the last three
//! accounts belong to the adversary (primary, decoy sender, drain sink).
struct AccountPlan {
    std::uint32_t validators{0};
    std::uint32_t honest_pool{0};

    AccountId honest_account(std::uint32_t k) const { return validators + k; }
    AccountId adversary_primary() const { return validators + honest_pool; }
    AccountId adversary_decoy() const { return validators + honest_pool + 1; }
    AccountId drain_sink() const { return validators + honest_pool + 2; }
    std::uint32_t num_accounts() const { return validators + honest_pool + 3; }

    Address trigger_cell(const StateLayout& l) const { return l.data_cell(0); }
    Address hot_cell(const StateLayout& l) const { return l.data_cell(1); }
    Address honest_cell(const StateLayout& l, std::uint32_t k) const { return l.data_cell(2 + k); }
};

AccountPlan make_account_plan(const SimConfig& cfg);

//! Fills in an automatic state layout when the config leaves it zero, and
//! checks adversary preconditions (the gaslight construction requires the
//! deterministic estimate builder with execution at least two rounds behind
//! when it runs in its native decoupled setting).
SimConfig finalize_config(SimConfig cfg);

//! Per-round transaction source driving a simulation. arrivals(r) enters the
//! mempool before round r's block is built; drivers call rounds in order.
class WorkloadGenerator {
  public:
    virtual ~WorkloadGenerator() = default;

    virtual std::vector<Transaction> arrivals(std::uint64_t round) = 0;

    //! Genesis balances.
    virtual void fund(StateSnapshot& st) const = 0;

    //! Lets a rational proposer drop its own junk from its build view.
    virtual bool proposer_includes(std::uint32_t validator, const Transaction& tx) const {
        (void)validator;
        (void)tx;
        return true;
    }

    //! Transactions that implement the attack itself (junk estimates).
    virtual bool is_attack_tx(TxId id) const {
        (void)id;
        return false;
    }

    virtual const std::set<AccountId>& adversary_accounts() const {
        static const std::set<AccountId> none;
        return none;
    }
};

std::unique_ptr<WorkloadGenerator> make_workload(const SimConfig& cfg);

} // namespace chainsim
