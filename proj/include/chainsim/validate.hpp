#pragma once

#include "chainsim/types.hpp"

namespace chainsim {

enum class TxVerdict {
    Ok,
    PathGasExceedsOne,  // some guard-resolved path has gas outside [0, 1.0]
    EstimateOutOfRange, // est not in [0, 1.0]
    AddressOutOfBounds, // a step or the sender references a cell outside the layout
    TooManyGuards,      // more guarded steps than path enumeration supports
};

const char* to_string(TxVerdict v);

inline constexpr int kMaxGuardedSteps = 20;

//! Bounds over every guard-resolved path, obtained by enumerating both guard
//! outcomes per guarded step.
struct PathGasBounds {
    std::int64_t min_micro{0};
    std::int64_t max_micro{0};
};

PathGasBounds path_gas_bounds(const Transaction& tx);

TxVerdict validate_transaction(const Transaction& tx, const StateLayout& layout);

} // namespace chainsim
