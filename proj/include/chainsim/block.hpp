#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "chainsim/types.hpp"

namespace chainsim {

struct Block {
    std::uint64_t round{0};
    std::uint32_t proposer{0};
    std::vector<Transaction> txs;
    //! Union of per-transaction write sets plus the proposer's balance cell;
    //! populated only by the partially coupled builder.
    std::set<Address> declared_write_union;

    std::int64_t total_est_micro() const {
        std::int64_t s = 0;
        for (const Transaction& tx : txs) s += tx.est.micro;
        return s;
    }

    bool contains(TxId id) const {
        return std::any_of(txs.begin(), txs.end(), [&](const Transaction& t) { return t.id == id; });
    }
};

//! Pending transactions, kept sorted by id. The per-round update rule is
//! enforced by the round driver: inject arrivals, build, remove the block.
class Mempool {
  public:
    void add(Transaction tx) {
        auto it = std::lower_bound(txs_.begin(), txs_.end(), tx.id,
                                   [](const Transaction& t, TxId id) { return t.id < id; });
        txs_.insert(it, std::move(tx));
    }

    void remove(const std::vector<Transaction>& included) {
        std::set<TxId> gone;
        for (const Transaction& tx : included) gone.insert(tx.id);
        std::erase_if(txs_, [&](const Transaction& t) { return gone.contains(t.id); });
    }

    const std::vector<Transaction>& view() const { return txs_; }
    std::size_t size() const { return txs_.size(); }
    bool empty() const { return txs_.empty(); }

  private:
    std::vector<Transaction> txs_;
};

} // namespace chainsim
