#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "chainsim/block.hpp"
#include "chainsim/state.hpp"

namespace chainsim {

enum class BuildMode { Coupled, Decoupled, Partial };

struct BuildContext {
    BuildMode mode{BuildMode::Coupled};
    const std::vector<Transaction>* mempool{nullptr}; // candidate view, ascending id
    const StateSnapshot* settled{nullptr};            // coupled: current state; partial: last executed state
    const std::set<Address>* pending_writes{nullptr}; // partial only: writes of finalized-but-unexecuted blocks
    std::uint32_t validator_count{0};                 // per-block transaction cap
    std::int64_t gas_cap_micro{0};                    // block gas capacity, micro-units
    std::uint64_t round{0};
    std::uint32_t proposer{0};
};

struct BuildResult {
    Block block;
    bool mempool_empty{false};
    bool no_independent{false};        // partial: every candidate conflicted or failed verification
    bool nontriviality_shortfall{false};
    std::vector<TxId> conflict_filtered; // partial: dropped for reading a pending write
};

//! State-aware selection: maximizes total metered gas under the cap via the
//! exact knapsack; on a congested mempool the block's gas equals the cap
//! exactly. Zero-gas transactions are added afterwards only if the
//! non-triviality floor min(floor(G), |mempool|) requires them.
BuildResult build_coupled_knapsack(const BuildContext& ctx);

//! State-oblivious selection: sort by (price desc, est desc, id asc) and add
//! greedily while the estimate sum fits the cap and the count fits.
BuildResult build_decoupled(const BuildContext& ctx);

//! Conflict-aware selection over the settled state: keeps transactions whose
//! declared reads avoid all pending writes and whose declared sets cover their
//! actual access sets at the settled state, then runs the knapsack on true gas.
//! Populates the block's declared write union from actual write sets plus the
//! proposer's balance cell.
BuildResult build_partial(const BuildContext& ctx);

//! Stable reorder by descending demand (how many mempool transactions declare
//! a read on a cell the transaction writes); only access-disjoint neighbors
//! ever swap, so the executed final state is unchanged.
Block reorder_hot(const Block& b, const std::vector<Transaction>& mempool, const StateSnapshot& st);

} // namespace chainsim
