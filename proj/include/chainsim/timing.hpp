#pragma once

#include <cstdint>
#include <stdexcept>

#include "chainsim/rational.hpp"

namespace chainsim {

//! Stage durations in milliseconds: execution, consensus, block creation.
struct TimingModel {
    std::int64_t delta_e_ms{200};
    std::int64_t delta_c_ms{600};
    std::int64_t delta_b_ms{200};
};

//! Decoupling speed-up: full slot over execution time.
inline Rational beta(const TimingModel& t) {
    if (t.delta_e_ms <= 0 || t.delta_c_ms <= 0 || t.delta_b_ms <= 0)
        throw std::domain_error("timing: stage durations must be positive");
    return ratio(t.delta_e_ms + t.delta_c_ms + t.delta_b_ms, t.delta_e_ms);
}

//! Sequential pipeline: one slot carries execution, consensus and creation.
inline std::int64_t coupled_slot_ms(const TimingModel& t) {
    return t.delta_e_ms + t.delta_c_ms + t.delta_b_ms;
}

//! Pipelined: consensus and block creation overlap, execution is off the
//! critical path; rounds advance every max(delta_c, delta_b).
inline std::int64_t pipelined_slot_ms(const TimingModel& t) {
    return t.delta_c_ms > t.delta_b_ms ? t.delta_c_ms : t.delta_b_ms;
}

//! Rounds until a block's execution output is settled in the partially
//! coupled pipeline: execution starts `shift` into the slot and takes
//! delta_e, so block i settles during round i + depth - 1 and the builder of
//! round i sees the state after block i - depth.
inline std::uint32_t partial_pipeline_depth(const TimingModel& t, std::int64_t shift_ms) {
    std::int64_t slot = pipelined_slot_ms(t);
    std::int64_t busy = shift_ms + t.delta_e_ms;
    std::int64_t depth = (busy + slot - 1) / slot;
    return depth < 1 ? 1u : static_cast<std::uint32_t>(depth);
}

} // namespace chainsim
