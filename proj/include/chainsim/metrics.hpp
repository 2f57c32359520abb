#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "chainsim/protocol.hpp"
#include "chainsim/rational.hpp"

namespace chainsim {

struct BlockMetrics {
    Rational cr_res{0, 1};      // executed gas over capacity
    Rational cr_res_star{1, 1}; // block gas over the state-aware optimum's gas
    Rational cr_rew_star{1, 1}; // block fee over the state-aware optimum's fee
    Rational burned_ratio{0, 1}; // executed gas plus aborted-estimate burn, over capacity
    std::int64_t proposer_reward{0};
};

//! Capacity utilization of an executed block: metered gas of its executed
//! transactions over the capacity. Aborted transactions burn their estimate;
//! that shows up in burned_ratio, not here.
Rational cr_res(const RoundEntry& entry, std::int64_t gas_cap_micro);

//! Same ratio computed from scratch for a free-standing block and pre-state.
Rational cr_res(const Block& b, const StateSnapshot& pre, const CostModel& model,
                std::int64_t gas_cap_micro);

//! gas(b, st) / gas(b*, st) where b* is the knapsack optimum over the mempool
//! at the true execution state; 0/0 reports 1 (nothing was missed).
Rational cr_res_star(const Block& b, const std::vector<Transaction>& mempool,
                     const StateSnapshot& st, std::uint32_t validator_cap,
                     std::int64_t gas_cap_micro);

//! fee(b, st) / fee(b*, st) with b* maximizing total assessed fee under the
//! gas cap; 0/0 reports 1.
Rational cr_rew_star(const Block& b, const std::vector<Transaction>& mempool,
                     const StateSnapshot& st, std::uint32_t validator_cap,
                     std::int64_t gas_cap_micro, const CostModel& model);

Rational burned_ratio(const RoundEntry& entry, std::int64_t gas_cap_micro);

BlockMetrics block_metrics(const RunRecord& run, std::size_t round_index);

//! Average executed gas per round, in gas units (1.0 == one full transaction
//! budget). Throws on an empty run.
Rational throughput_gas_per_round(const RunRecord& run);
Rational throughput_gas_per_second(const RunRecord& run);

//! Rounds from submission to the settling of the first containing block,
//! inclusive of the settling round. Aggregate form averages over every
//! transaction executed within the run.
Rational latency_rounds(const RunRecord& run, TxId tx); // throws if never executed
Rational mean_latency_rounds(const RunRecord& run);
Rational mean_latency_ms(const RunRecord& run);

struct FairnessReport {
    std::vector<std::int64_t> rewards;
    //! ratios[i][j] = rho_i / rho_j; infinity where rho_j = 0 < rho_i, 1 where
    //! both are zero.
    std::vector<std::vector<double>> ratios;
    double epsilon{0.05};
    bool fair{false};
    bool infinite_ratio{false}; // some validator earned, another earned nothing
    double max_deviation{0.0};  // max |rho_i/rho_j - 1| over finite ratios
    std::uint64_t executed_blocks{0};
    std::uint64_t full_rotations{0};
};

//! Verdict uses exact integer arithmetic: fair iff for all pairs
//! |rho_i - rho_j| <= eps * rho_j (eps given as a rational, default 1/20).
FairnessReport fairness(const RunRecord& run, Rational eps = Rational{1, 20});

std::int64_t total_adversary_charged(const RunRecord& run);

//! Artifact writers; all output is integer/rational-rendered and reproduces
//! byte-for-byte from (config, seed).
void write_rounds_csv(const RunRecord& run, std::ostream& os);
void write_outcomes_csv(const RunRecord& run, std::ostream& os);
void write_summary(const RunRecord& run, std::ostream& os);
void write_fairness_report(const RunRecord& run, std::ostream& os);

} // namespace chainsim
