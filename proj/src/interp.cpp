#include "chainsim/interp.hpp"

#include <algorithm>
#include <map>

namespace chainsim {

PathTrace resolve_path(const Transaction& tx, const StateSnapshot& st) {
    PathTrace trace;
    // Overlay of cells modified so far by this transaction.
    std::map<Address, std::int64_t> local;
    auto read = [&](Address a) {
        auto it = local.find(a);
        return it != local.end() ? it->second : st.get(a);
    };
    auto write = [&](Address a, std::int64_t v) { local[a] = v; };

    for (const Step& step : tx.steps) {
        trace.gas += step.gas_cost;
        StepResolution res;
        bool take = true;
        if (step.guard) take = guard_holds(*step.guard, read(step.guard->cell));
        if (take) {
            res.effects_applied = true;
            for (const Effect& e : step.effects) {
                if (const auto* w = std::get_if<WriteCell>(&e)) {
                    write(w->cell, w->value);
                } else {
                    const auto& t = std::get<Transfer>(e);
                    std::int64_t amount = std::clamp<std::int64_t>(t.amount, 0, read(tx.sender));
                    write(tx.sender, read(tx.sender) - amount);
                    write(t.to, read(t.to) + amount);
                }
            }
        }
        res.halted = step.guard.has_value() && take;
        trace.steps.push_back(res);
        if (res.halted) break;
    }
    return trace;
}

} // namespace chainsim
