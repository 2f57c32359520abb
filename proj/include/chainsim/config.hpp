#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "chainsim/exec.hpp"
#include "chainsim/timing.hpp"
#include "chainsim/types.hpp"

namespace chainsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { Coupled, Decoupled, Partial };
enum class BuilderKind { Knapsack, GreedyEst, Partial };
enum class Rotation { RoundRobin, UniformSeeded };

const char* to_string(Mode m);
const char* to_string(BuilderKind b);

enum class AdversaryKind { None, Gaslight, FundDrain, RationalValidator };

struct GasBucket {
    std::int64_t micro{kGasUnit};
    std::uint32_t weight{1};
};

enum class EstPolicy { Exact, Factor };

//! Client workload description: honest arrivals plus one optional adversary.
struct WorkloadSpec {
    std::uint32_t honest_rate{10};          // txs per round
    std::uint32_t initial_burst{0};         // extra honest txs in the first round
    std::vector<GasBucket> gas_dist{{kGasUnit, 1}};
    EstPolicy est_policy{EstPolicy::Exact};
    std::int64_t est_factor_micro{kGasUnit}; // est = min(1, gas * factor), factor in micro
    std::int64_t price_lo{5};
    std::int64_t price_hi{15};
    std::uint32_t honest_accounts{32};
    bool fresh_accounts{false};             // never reuse a sender (fully independent txs)
    bool conflict_all{false};               // every honest tx reads+writes one hot cell
    std::int64_t initial_balance{1'000'000'000'000};

    AdversaryKind adversary{AdversaryKind::None};
    std::int64_t junk_est_micro{250'000};   // gaslight: per-junk estimate (capacity / validators)
    std::int64_t junk_price{1'000};         // gaslight: above every honest price
    std::int64_t decoy_price{1};            // gaslight: below every honest price
    std::uint64_t attack_from_round{1};
    std::uint32_t rational_validator{0};
    std::int64_t drain_balance{1'000};      // fund-drain: attacker's starting balance
    std::uint64_t drain_round{0};
    std::uint64_t drain_attack_from{2};
    std::int64_t drain_attack_price{50};
    std::int64_t drain_attack_est_micro{250'000};
    std::uint32_t drain_attack_txs{2};
};

struct SimConfig {
    Mode mode{Mode::Coupled};
    std::uint64_t rounds{100};
    std::uint32_t validators{4};       // N: validator count and per-block tx cap
    std::int64_t gas_cap_micro{kGasUnit}; // G in micro-units
    std::uint64_t seed{1};
    TimingModel timing;
    std::uint32_t lag{2};              // decoupled: rounds between finalization and execution
    std::int64_t exec_shift_ms{-1};    // partial: execution start offset; -1 means delta_b
    BuilderKind builder{BuilderKind::Knapsack};
    CostModel cost_model;
    Rotation rotation{Rotation::RoundRobin};
    WorkloadSpec workload;
    std::optional<std::uint32_t> faulty_proposer; // partial: misdeclares its write union
    bool reorder_hot_enabled{true};
    StateLayout layout; // zero num_accounts -> sized automatically from the workload

    std::int64_t exec_shift() const { return exec_shift_ms < 0 ? timing.delta_b_ms : exec_shift_ms; }

    //! Rounds between a block's round and the round its execution settles.
    std::uint32_t exec_delay() const {
        switch (mode) {
            case Mode::Coupled: return 0;
            case Mode::Decoupled: return lag;
            case Mode::Partial: return partial_pipeline_depth(timing, exec_shift()) - 1;
        }
        return 0;
    }

    std::int64_t slot_ms() const {
        return mode == Mode::Coupled ? coupled_slot_ms(timing) : pipelined_slot_ms(timing);
    }
};

//! Validates cross-field constraints; throws ConfigError.
void validate_config(const SimConfig& cfg);

//! Parses the scenario file format: INI-style sections [mode], [timing],
//! [validators], [workload], [adversary] (keys documented in the README).
SimConfig parse_config_file(const std::string& path);
SimConfig parse_config_text(const std::string& text);

} // namespace chainsim
