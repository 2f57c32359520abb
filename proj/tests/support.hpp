#pragma once

#include <algorithm>
#include <vector>

#include "chainsim/access.hpp"
#include "chainsim/exec.hpp"
#include "chainsim/rng.hpp"
#include "chainsim/state.hpp"
#include "chainsim/types.hpp"

namespace testsupport {

using namespace chainsim;

inline constexpr StateLayout kLayout{16, 64}; // 16 accounts, 64 data cells

struct TxMaker {
    Transaction tx;

    TxMaker(TxId id, AccountId sender) {
        tx.id = id;
        tx.sender = sender;
        tx.declared_reads.insert(sender);
        tx.declared_writes.insert(sender);
    }

    TxMaker& price(std::int64_t p) { tx.price = p; return *this; }
    TxMaker& est(std::int64_t micro) { tx.est = GasAmount{micro}; return *this; }
    TxMaker& submit(std::uint64_t r) { tx.submit_round = r; return *this; }

    TxMaker& burn(std::int64_t gas_micro) {
        Step s;
        s.gas_cost = GasAmount{gas_micro};
        tx.steps.push_back(std::move(s));
        return *this;
    }

    TxMaker& write(Address cell, std::int64_t value, std::int64_t gas_micro = 0) {
        Step s;
        s.gas_cost = GasAmount{gas_micro};
        s.effects.push_back(WriteCell{cell, value});
        tx.steps.push_back(std::move(s));
        tx.declared_writes.insert(cell);
        return *this;
    }

    TxMaker& transfer(AccountId to, std::int64_t amount, std::int64_t gas_micro = 0) {
        Step s;
        s.gas_cost = GasAmount{gas_micro};
        s.effects.push_back(Transfer{to, amount});
        tx.steps.push_back(std::move(s));
        tx.declared_writes.insert(to);
        return *this;
    }

    //! Guarded exit step: charge gas, apply effects and stop when the guard
    //! holds, skip effects and continue when it does not.
    TxMaker& exit_if(Guard g, std::int64_t gas_micro = 0, std::vector<Effect> effects = {}) {
        Step s;
        s.guard = g;
        s.gas_cost = GasAmount{gas_micro};
        s.effects = std::move(effects);
        tx.declared_reads.insert(g.cell);
        for (const Effect& e : s.effects) {
            if (const auto* w = std::get_if<WriteCell>(&e)) tx.declared_writes.insert(w->cell);
            else tx.declared_writes.insert(std::get<Transfer>(e).to);
        }
        tx.steps.push_back(std::move(s));
        return *this;
    }

    Transaction done() const { return tx; }
};

//! Exhaustive oracle: best total value over subsets with weight <= cap and
//! size <= count_cap. Independent of the production solver.
inline std::int64_t brute_force_best_value(const std::vector<std::int64_t>& weights,
                                           const std::vector<std::int64_t>& values,
                                           std::int64_t cap, int count_cap) {
    const std::size_t n = weights.size();
    std::int64_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::int64_t w = 0;
        std::int64_t v = 0;
        int count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                w += weights[i];
                v += values[i];
                ++count;
            }
        }
        if (w <= cap && count <= count_cap) best = std::max(best, v);
    }
    return best;
}

//! Random valid single-guard program over data cells; gas stays within one
//! unit on every path by construction.
inline Transaction random_program(Rng& rng, TxId id) {
    AccountId sender = static_cast<AccountId>(rng.uniform(1, kLayout.num_accounts - 1));
    TxMaker mk(id, sender);
    mk.price(rng.uniform_i64(0, 20));
    std::uint64_t shape = rng.uniform(0, 3);
    auto data = [&](std::uint64_t lo, std::uint64_t hi) {
        return kLayout.data_cell(static_cast<std::uint32_t>(rng.uniform(lo, hi)));
    };
    std::int64_t budget = kGasUnit;
    auto spend = [&](std::int64_t max_part) {
        std::int64_t g = rng.uniform_i64(0, std::min(budget, max_part));
        budget -= g;
        return g;
    };
    if (shape == 0) { // plain writes
        mk.write(data(0, 15), rng.uniform_i64(-5, 5), spend(400'000));
        mk.write(data(0, 15), rng.uniform_i64(-5, 5), spend(400'000));
    } else if (shape == 1) { // cheap-exit-or-burn
        Cmp op = static_cast<Cmp>(rng.uniform(0, 4));
        mk.exit_if(Guard{data(0, 15), op, rng.uniform_i64(-2, 2)}, spend(100'000));
        mk.burn(spend(800'000));
    } else if (shape == 2) { // guarded write then unconditional write
        Cmp op = static_cast<Cmp>(rng.uniform(0, 4));
        mk.exit_if(Guard{data(0, 15), op, rng.uniform_i64(-2, 2)}, spend(200'000),
                   {WriteCell{data(0, 15), rng.uniform_i64(-5, 5)}});
        mk.write(data(0, 15), rng.uniform_i64(-5, 5), spend(600'000));
    } else { // transfer plus burn
        mk.transfer(static_cast<AccountId>(rng.uniform(0, kLayout.num_accounts - 1)),
                    rng.uniform_i64(0, 50), spend(300'000));
        mk.burn(spend(500'000));
    }
    mk.est(kGasUnit); // estimates never bind unless a test tightens them
    return mk.done();
}

inline StateSnapshot random_state(Rng& rng) {
    StateSnapshot st;
    for (AccountId a = 0; a < kLayout.num_accounts; ++a)
        st.set(a, rng.uniform_i64(0, 1000));
    for (std::uint32_t k = 0; k < 16; ++k)
        st.set(kLayout.data_cell(k), rng.uniform_i64(-2, 2));
    return st;
}

} // namespace testsupport
