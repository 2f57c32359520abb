#pragma once

#include <vector>

#include "chainsim/state.hpp"
#include "chainsim/types.hpp"

namespace chainsim {

//! Resolution of one reached step: whether its effects ran and whether the
//! transaction halted there (guard held).
struct StepResolution {
    bool effects_applied{false};
    bool halted{false};
};

//! The guard-resolved path of a transaction under a concrete state. Guards see
//! effects of earlier steps of the same transaction. Everything downstream
//! (gas metering, access extraction, execution) derives from this one walk, so
//! the three can never disagree on the path taken.
struct PathTrace {
    std::vector<StepResolution> steps; // one entry per reached step, in order
    GasAmount gas{0};
};

PathTrace resolve_path(const Transaction& tx, const StateSnapshot& st);

} // namespace chainsim
