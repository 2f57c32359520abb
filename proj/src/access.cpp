#include "chainsim/access.hpp"

#include "chainsim/interp.hpp"

namespace chainsim {

AccessSets actual_access_sets(const Transaction& tx, const StateSnapshot& st) {
    AccessSets acc;
    PathTrace trace = resolve_path(tx, st);
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const Step& step = tx.steps[i];
        if (step.guard) acc.reads.insert(step.guard->cell);
        if (!trace.steps[i].effects_applied) continue;
        for (const Effect& e : step.effects) {
            if (const auto* w = std::get_if<WriteCell>(&e)) {
                acc.writes.insert(w->cell);
            } else {
                const auto& t = std::get<Transfer>(e);
                acc.writes.insert(tx.sender);
                acc.writes.insert(t.to);
            }
        }
    }
    // Charging reads and writes the sender's balance, always.
    acc.reads.insert(tx.sender);
    acc.writes.insert(tx.sender);
    return acc;
}

} // namespace chainsim
