#pragma once

#include <cstdint>
#include <vector>

#include "chainsim/types.hpp"

namespace chainsim {

struct KnapsackItem {
    TxId id{0};
    std::int64_t weight{0}; // micro-gas
    std::int64_t value{0};  // what the builder maximizes (gas, or fee under a cost model)
    std::size_t index{0};   // caller-side position
};

struct KnapsackResult {
    std::vector<std::size_t> chosen; // caller indices, ascending tx id
    std::int64_t total_weight{0};
    std::int64_t total_value{0};
};

//! Exact 0/1 knapsack with a cardinality cap: maximize total value subject to
//! total weight <= capacity and |S| <= count_cap. Weights are gcd-reduced
//! first, then a dense suffix DP over (capacity, count) is solved and the
//! solution rebuilt greedily in ascending id order. Among value-optimal sets
//! this prefers lower ids; items with zero weight and zero value are never
//! chosen (padding is a builder concern, not a knapsack one).
//! Throws std::runtime_error when the reduced instance exceeds desk scale.
KnapsackResult solve_knapsack(const std::vector<KnapsackItem>& items, std::int64_t capacity,
                              int count_cap);

//! Whether some subset of at most count_cap weights sums to target exactly
//! (the congestion witness test).
bool subset_sum_exists(const std::vector<std::int64_t>& weights, std::int64_t target, int count_cap);

} // namespace chainsim
