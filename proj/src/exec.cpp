#include "chainsim/exec.hpp"

#include <algorithm>

#include "chainsim/interp.hpp"

namespace chainsim {

const char* to_string(ExecStatus s) {
    return s == ExecStatus::Executed ? "executed" : "aborted";
}

GasAmount gas_actual(const Transaction& tx, const StateSnapshot& st) {
    return resolve_path(tx, st).gas;
}

std::int64_t cost(const Transaction& tx, const StateSnapshot& st, const CostModel& model) {
    GasAmount g = gas_actual(tx, st);
    std::int64_t consumed = g.micro <= tx.est.micro ? g.micro : tx.est.micro;
    return model.charge(tx.price, consumed, tx.est.micro);
}

ExecOutcome execute_tx_inplace(const Transaction& tx, StateSnapshot& st, const CostModel& model,
                               std::optional<AccountId> proposer) {
    ExecOutcome out;
    out.tx_id = tx.id;
    out.sender = tx.sender;

    // The path is pinned against the pre-charge state; the fee settlement
    // below cannot retroactively change which branch was metered.
    PathTrace trace = resolve_path(tx, st);
    bool executed = trace.gas.micro <= tx.est.micro;
    out.status = executed ? ExecStatus::Executed : ExecStatus::Aborted;
    out.gas_consumed = executed ? trace.gas : tx.est;

    std::int64_t fee = model.charge(tx.price, out.gas_consumed.micro, tx.est.micro);
    std::int64_t balance = std::max<std::int64_t>(0, st.get(tx.sender));
    out.charged = std::min(fee, balance);
    out.uncollected = fee - out.charged;
    st.add(tx.sender, -out.charged);
    if (proposer) st.add(*proposer, out.charged);

    if (executed) {
        for (size_t i = 0; i < trace.steps.size(); ++i) {
            if (!trace.steps[i].effects_applied) continue;
            for (const Effect& e : tx.steps[i].effects) {
                if (const auto* w = std::get_if<WriteCell>(&e)) {
                    st.set(w->cell, w->value);
                    out.effect_writes.emplace_back(w->cell, w->value);
                } else {
                    const auto& t = std::get<Transfer>(e);
                    std::int64_t amount = std::clamp<std::int64_t>(t.amount, 0, st.get(tx.sender));
                    st.add(tx.sender, -amount);
                    st.add(t.to, amount);
                    out.effect_writes.emplace_back(tx.sender, st.get(tx.sender));
                    out.effect_writes.emplace_back(t.to, st.get(t.to));
                }
            }
        }
    }
    return out;
}

ExecOutcome execute_tx(const Transaction& tx, const StateSnapshot& st, const CostModel& model,
                       std::optional<AccountId> proposer) {
    StateSnapshot scratch = st;
    return execute_tx_inplace(tx, scratch, model, proposer);
}

BlockExecResult execute_block(const Block& b, const StateSnapshot& st, const CostModel& model) {
    BlockExecResult result;
    result.state = st;
    for (const Transaction& tx : b.txs) {
        ExecOutcome out = execute_tx_inplace(tx, result.state, model, b.proposer);
        result.total_gas_consumed += out.gas_consumed;
        result.outcomes.push_back(std::move(out));
    }
    result.state.settled_round = b.round + 1;
    return result;
}

} // namespace chainsim
