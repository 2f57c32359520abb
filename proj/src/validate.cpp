#include "chainsim/validate.hpp"

#include <algorithm>

namespace chainsim {

const char* to_string(TxVerdict v) {
    switch (v) {
        case TxVerdict::Ok: return "Ok";
        case TxVerdict::PathGasExceedsOne: return "PathGasExceedsOne";
        case TxVerdict::EstimateOutOfRange: return "EstimateOutOfRange";
        case TxVerdict::AddressOutOfBounds: return "AddressOutOfBounds";
        case TxVerdict::TooManyGuards: return "TooManyGuards";
    }
    return "?";
}

namespace {

// Enumerate both outcomes of each guarded step. A true guard halts the
// transaction after its step, a false one skips to the next step; unconditional
// steps always continue.
void enumerate(const Transaction& tx, size_t i, std::int64_t gas, PathGasBounds& b) {
    if (i == tx.steps.size()) {
        b.min_micro = std::min(b.min_micro, gas);
        b.max_micro = std::max(b.max_micro, gas);
        return;
    }
    const Step& s = tx.steps[i];
    std::int64_t g = gas + s.gas_cost.micro;
    if (s.guard) {
        // guard true: halt here
        b.min_micro = std::min(b.min_micro, g);
        b.max_micro = std::max(b.max_micro, g);
        // guard false: continue
        enumerate(tx, i + 1, g, b);
    } else {
        enumerate(tx, i + 1, g, b);
    }
}

} // namespace

PathGasBounds path_gas_bounds(const Transaction& tx) {
    PathGasBounds b;
    if (tx.steps.empty()) return b;
    b.min_micro = INT64_MAX;
    b.max_micro = INT64_MIN;
    enumerate(tx, 0, 0, b);
    return b;
}

TxVerdict validate_transaction(const Transaction& tx, const StateLayout& layout) {
    int guarded = 0;
    for (const Step& s : tx.steps)
        if (s.guard) ++guarded;
    if (guarded > kMaxGuardedSteps) return TxVerdict::TooManyGuards;

    PathGasBounds b = path_gas_bounds(tx);
    if (b.min_micro < 0 || b.max_micro > kGasUnit) return TxVerdict::PathGasExceedsOne;

    if (tx.est.micro < 0 || tx.est.micro > kGasUnit) return TxVerdict::EstimateOutOfRange;

    if (tx.sender >= layout.num_accounts) return TxVerdict::AddressOutOfBounds;
    for (const Step& s : tx.steps) {
        if (s.guard && s.guard->cell >= layout.state_size()) return TxVerdict::AddressOutOfBounds;
        for (const Effect& e : s.effects) {
            if (const auto* w = std::get_if<WriteCell>(&e)) {
                if (w->cell >= layout.state_size()) return TxVerdict::AddressOutOfBounds;
            } else if (std::get<Transfer>(e).to >= layout.num_accounts) {
                return TxVerdict::AddressOutOfBounds;
            }
        }
    }
    return TxVerdict::Ok;
}

} // namespace chainsim
