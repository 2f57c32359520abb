#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainsim/adversary.hpp"
#include "chainsim/block.hpp"
#include "chainsim/builders.hpp"
#include "chainsim/config.hpp"
#include "chainsim/exec.hpp"
#include "chainsim/rational.hpp"

namespace chainsim {

enum class ValidatorStatus { Honest, Rational, Excluded };

struct RoundEntry {
    std::uint64_t round{0};
    std::uint32_t proposer{0};
    Block block;
    std::vector<Transaction> mempool_at_build; // M_i, before selection
    std::int64_t est_total_micro{0};
    bool attacked{false};          // block contains adversarial junk
    bool mempool_empty{false};
    bool no_independent{false};
    bool nontriviality_shortfall{false};
    bool congested_est{false};     // estimate-exact witness existed at build time
    bool congested_gas{false};     // gas-exact witness existed at execution time
    std::uint64_t finalize_round{0};
    std::int64_t exec_round{-1};   // -1: execution did not settle within the run
    StateSnapshot pre_exec_state;
    std::vector<ExecOutcome> outcomes;
    std::int64_t gas_consumed_micro{0}; // sum over outcomes (aborts burn their estimate)
    std::uint64_t mempool_size_after{0};
    std::vector<std::int64_t> rewards_after; // cumulative per validator at round end
};

struct Exclusion {
    std::uint32_t validator{0};
    std::uint64_t detected_round{0}; // execution round where the mismatch surfaced
};

struct RunRecord {
    SimConfig config;
    std::vector<RoundEntry> rounds_log;
    std::vector<ValidatorStatus> validator_status;
    std::vector<Exclusion> exclusions;
    std::vector<std::int64_t> rewards; // final cumulative per validator
    std::int64_t adversary_charged{0};
    std::int64_t adversary_uncollected{0};
    std::int64_t total_uncollected{0};
    std::vector<TxId> final_mempool;
    std::uint64_t submitted_txs{0};
    std::uint64_t rejected_txs{0}; // failed validation at submission
    Rational speedup{1, 1};        // beta of the timing model
    std::int64_t slot_ms{0};
    std::vector<std::string> violations; // invariant breaches observed while running
};

//! Runs the configured pipeline: one block finalized per round, execution
//! settling exec_delay() rounds later, mempool updated by the standard rule.
//! The same engine drives all three couplings; they differ in what the
//! builder may see and when execution lands.
RunRecord run_simulation(const SimConfig& cfg);
RunRecord run_simulation(const SimConfig& cfg, WorkloadGenerator& workload);

//! Re-checks structural run invariants (mempool conservation, one block per
//! round, exclusion permanence, execution scheduling); returns problems found.
std::vector<std::string> check_run(const RunRecord& run);

} // namespace chainsim
