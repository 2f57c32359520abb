#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainsim {

struct TraceError : std::runtime_error {
    enum class Kind { FileNotFound, MalformedHeader, NoUsableRows };
    Kind kind;
    TraceError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

//! One exported transaction: declared gas ceiling, metered usage, and an
//! optional fee price.
struct TraceRow {
    std::string tx_id;
    std::int64_t gas_limit{0};
    std::int64_t gas_used{0};
    std::optional<std::int64_t> price;
};

struct TraceIngest {
    std::vector<TraceRow> rows;
    std::uint64_t malformed_rows{0};    // unparseable; skipped with a warning count
    std::uint64_t invariant_rows{0};    // gas_used > gas_limit; excluded, counted
};

//! CSV reader, header-driven column mapping (tx_id, gas_limit, gas_used and
//! optionally price, any column order). Throws TraceError on a missing file
//! or a header lacking the required columns.
TraceIngest ingest_trace(const std::string& path);
TraceIngest ingest_trace_text(const std::string& text);

struct OverestimationStats {
    double mean_pct{0.0};              // mean of 100*(limit-used)/used
    double p10{0}, p25{0}, p50{0}, p75{0}, p90{0}; // nearest-rank, ascending orientation
    std::uint64_t usable_rows{0};
    std::uint64_t zero_use_rows{0};    // excluded from ratios, reported separately
    std::int64_t sum_used{0};
    std::int64_t sum_limit{0};

    double factor_ratio_of_sums() const {
        return sum_used > 0 ? static_cast<double>(sum_limit) / static_cast<double>(sum_used) : 0.0;
    }
    double factor_mean_of_ratios() const { return 1.0 + mean_pct / 100.0; }

    //! Speed-up left after declared-gas packing dilutes executed gas:
    //! beta * sum(used)/sum(limit). The mean-of-ratios variant divides by the
    //! mean per-transaction factor instead; the two disagree on skewed data,
    //! so reports carry both.
    double effective_beta(double beta_in) const {
        return sum_limit > 0 ? beta_in * static_cast<double>(sum_used) / static_cast<double>(sum_limit)
                             : beta_in;
    }
    double effective_beta_mean_of_ratios(double beta_in) const {
        return beta_in / factor_mean_of_ratios();
    }
};

//! Per-row overestimation o = 100*(limit-used)/used over rows with used > 0.
//! Percentile pK is the nearest-rank K-th percentile of the ascending o
//! distribution (the descending table is the same values relabeled).
OverestimationStats overestimation_stats(const std::vector<TraceRow>& rows);

struct EconParams {
    double total_rewards_usd{352e6}; // annual execution-layer rewards
    double alpha{0.10};              // adversary's own proposer share
    double factor{715.0};            // achievable overestimation factor, >= 1
    double priority_fee_gwei{50.0};
    double attack_tx_gas{50'000.0};
    double blocks_per_year{2'600'000.0};
    double eth_price_usd{4'460.0};
    double silent_factor{1.0};       // fraction of each block actually occupied
};

struct EconReport {
    double captured_rewards_usd{0.0};
    double attacker_cost_eth{0.0};
    double attacker_cost_usd{0.0};
    double net_usd{0.0};
};

//! Reward capture and running cost of saturating other proposers' blocks:
//! captured = rewards * (1 - alpha) * (f - 1)/f, cost in ETH =
//! fee * gas * blocks * (1 - alpha) / 1e9, both scaled by silent_factor.
EconReport attack_economics(const EconParams& p);

std::string stats_report_json(const OverestimationStats& s, double beta_in);
std::string econ_report_json(const EconParams& p, const EconReport& r);

} // namespace chainsim
