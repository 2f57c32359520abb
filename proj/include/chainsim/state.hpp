#pragma once

#include <cstdint>
#include <map>

#include "chainsim/types.hpp"

namespace chainsim {

//! Ledger state: sparse cell map, absent cell == 0. Kept canonical (no
//! explicit zero entries) so snapshot equality and serialization are stable.
struct StateSnapshot {
    std::map<Address, std::int64_t> cells;
    std::uint64_t settled_round{0};

    std::int64_t get(Address a) const {
        auto it = cells.find(a);
        return it == cells.end() ? 0 : it->second;
    }

    void set(Address a, std::int64_t v) {
        if (v == 0) cells.erase(a);
        else cells[a] = v;
    }

    void add(Address a, std::int64_t delta) { set(a, get(a) + delta); }

    friend bool operator==(const StateSnapshot&, const StateSnapshot&) = default;
};

} // namespace chainsim
