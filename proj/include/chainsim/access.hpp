#pragma once

#include <set>

#include "chainsim/state.hpp"
#include "chainsim/types.hpp"

namespace chainsim {

struct AccessSets {
    std::set<Address> reads;
    std::set<Address> writes;
};

//! Cells actually touched by tx under st: reads are the guard cells evaluated
//! on the taken path plus the sender's balance cell (charging reads it);
//! writes are the effect targets on the taken path, both balance cells of any
//! transfer, plus the sender's balance cell (charging writes it).
AccessSets actual_access_sets(const Transaction& tx, const StateSnapshot& st);

inline bool covers(const std::set<Address>& declared, const std::set<Address>& actual) {
    for (Address a : actual)
        if (!declared.contains(a)) return false;
    return true;
}

inline bool intersects(const std::set<Address>& a, const std::set<Address>& b) {
    auto it = a.begin();
    auto jt = b.begin();
    while (it != a.end() && jt != b.end()) {
        if (*it < *jt) ++it;
        else if (*jt < *it) ++jt;
        else return true;
    }
    return false;
}

} // namespace chainsim
