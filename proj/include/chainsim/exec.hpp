#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chainsim/block.hpp"
#include "chainsim/state.hpp"
#include "chainsim/types.hpp"

namespace chainsim {

enum class CostModelKind {
    Current,      // fee = c_base + price * metered gas
    FullEstimate, // fee = c_base + price * declared estimate, success or not
};

struct CostModel {
    CostModelKind kind{CostModelKind::Current};
    std::int64_t c_base{0};

    std::int64_t charge(std::int64_t price, std::int64_t gas_consumed_micro,
                        std::int64_t est_micro) const {
        std::int64_t metered = kind == CostModelKind::FullEstimate ? est_micro : gas_consumed_micro;
        return c_base + price * metered;
    }
};

enum class ExecStatus { Executed, Aborted };

const char* to_string(ExecStatus s);

struct ExecOutcome {
    TxId tx_id{0};
    AccountId sender{0};
    ExecStatus status{ExecStatus::Executed};
    GasAmount gas_consumed{0};
    std::int64_t charged{0};     // actually collected from the sender
    std::int64_t uncollected{0}; // assessed fee the sender's balance could not cover
    //! Post-state contribution of the transaction's own effects (cell, value
    //! after the write), in application order. Empty for aborted transactions.
    std::vector<std::pair<Address, std::int64_t>> effect_writes;
};

//! gas(tx, st): gas of the guard-resolved path through tx under st. Defined
//! independently of the estimate.
GasAmount gas_actual(const Transaction& tx, const StateSnapshot& st);

//! Assessed fee for tx at st under the model, abort-aware: an execution whose
//! path gas exceeds the estimate burns (and is priced at) the estimate.
std::int64_t cost(const Transaction& tx, const StateSnapshot& st, const CostModel& model);

//! Executes tx against st. The fee settles first (debit the sender, clamped at
//! zero with the shortfall recorded; credit the proposer when given), then the
//! path effects apply. If the path gas exceeds the estimate the transaction
//! aborts: the estimate is burned and no effect reaches the state.
ExecOutcome execute_tx_inplace(const Transaction& tx, StateSnapshot& st, const CostModel& model,
                               std::optional<AccountId> proposer);

ExecOutcome execute_tx(const Transaction& tx, const StateSnapshot& st, const CostModel& model,
                       std::optional<AccountId> proposer);

struct BlockExecResult {
    StateSnapshot state;
    std::vector<ExecOutcome> outcomes;
    GasAmount total_gas_consumed{0};
};

//! Executes the block's transactions strictly in order, each against the
//! cumulative intermediate state; fees credit the block proposer's balance.
BlockExecResult execute_block(const Block& b, const StateSnapshot& st, const CostModel& model);

} // namespace chainsim
