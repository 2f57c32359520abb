#include "chainsim/builders.hpp"

#include <algorithm>

#include "chainsim/access.hpp"
#include "chainsim/exec.hpp"
#include "chainsim/knapsack.hpp"

namespace chainsim {

namespace {

std::size_t nontriviality_floor(const BuildContext& ctx) {
    return std::min<std::size_t>(static_cast<std::size_t>(ctx.gas_cap_micro / kGasUnit),
                                 ctx.mempool->size());
}

//! Knapsack over `candidates` with precomputed gas weights, then zero-gas
//! padding up to the non-triviality floor.
BuildResult assemble_by_gas(const BuildContext& ctx, const std::vector<const Transaction*>& candidates,
                            const std::vector<std::int64_t>& gas_micro) {
    BuildResult result;
    result.block.round = ctx.round;
    result.block.proposer = ctx.proposer;

    std::vector<KnapsackItem> items;
    items.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i)
        items.push_back({candidates[i]->id, gas_micro[i], gas_micro[i], i});

    KnapsackResult picked = solve_knapsack(items, ctx.gas_cap_micro,
                                           static_cast<int>(ctx.validator_count));
    std::vector<char> taken(candidates.size(), 0);
    for (std::size_t idx : picked.chosen) {
        taken[idx] = 1;
        result.block.txs.push_back(*candidates[idx]);
    }

    // Pad with zero-gas transactions (ascending id) only if the floor demands it.
    const std::size_t floor = nontriviality_floor(ctx);
    for (std::size_t i = 0; i < candidates.size() && result.block.txs.size() < floor; ++i) {
        if (taken[i] || gas_micro[i] != 0) continue;
        if (result.block.txs.size() >= ctx.validator_count) break;
        taken[i] = 1;
        result.block.txs.push_back(*candidates[i]);
    }
    std::sort(result.block.txs.begin(), result.block.txs.end(),
              [](const Transaction& a, const Transaction& b) { return a.id < b.id; });
    result.nontriviality_shortfall = result.block.txs.size() < floor;
    return result;
}

} // namespace

BuildResult build_coupled_knapsack(const BuildContext& ctx) {
    if (ctx.mempool->empty()) {
        BuildResult r;
        r.block.round = ctx.round;
        r.block.proposer = ctx.proposer;
        r.mempool_empty = true;
        return r;
    }
    std::vector<const Transaction*> candidates;
    std::vector<std::int64_t> gas;
    candidates.reserve(ctx.mempool->size());
    for (const Transaction& tx : *ctx.mempool) {
        candidates.push_back(&tx);
        gas.push_back(gas_actual(tx, *ctx.settled).micro);
    }
    return assemble_by_gas(ctx, candidates, gas);
}

BuildResult build_decoupled(const BuildContext& ctx) {
    BuildResult result;
    result.block.round = ctx.round;
    result.block.proposer = ctx.proposer;
    if (ctx.mempool->empty()) {
        result.mempool_empty = true;
        return result;
    }

    std::vector<const Transaction*> order;
    order.reserve(ctx.mempool->size());
    for (const Transaction& tx : *ctx.mempool) order.push_back(&tx);
    std::sort(order.begin(), order.end(), [](const Transaction* a, const Transaction* b) {
        if (a->price != b->price) return a->price > b->price;
        if (a->est != b->est) return a->est.micro > b->est.micro;
        return a->id < b->id;
    });

    std::int64_t est_sum = 0;
    for (const Transaction* tx : order) {
        if (result.block.txs.size() >= ctx.validator_count) break;
        if (est_sum + tx->est.micro > ctx.gas_cap_micro) continue;
        est_sum += tx->est.micro;
        result.block.txs.push_back(*tx);
    }
    std::sort(result.block.txs.begin(), result.block.txs.end(),
              [](const Transaction& a, const Transaction& b) { return a.id < b.id; });
    result.nontriviality_shortfall = result.block.txs.size() < nontriviality_floor(ctx);
    return result;
}

BuildResult build_partial(const BuildContext& ctx) {
    if (ctx.mempool->empty()) {
        BuildResult r;
        r.block.round = ctx.round;
        r.block.proposer = ctx.proposer;
        r.mempool_empty = true;
        return r;
    }

    static const std::set<Address> kNoPending;
    const std::set<Address>& pending = ctx.pending_writes ? *ctx.pending_writes : kNoPending;

    std::vector<const Transaction*> candidates;
    std::vector<std::int64_t> gas;
    std::vector<AccessSets> access;
    std::vector<TxId> conflicts;
    for (const Transaction& tx : *ctx.mempool) {
        if (intersects(tx.declared_reads, pending)) {
            conflicts.push_back(tx.id);
            continue;
        }
        AccessSets acc = actual_access_sets(tx, *ctx.settled);
        if (!covers(tx.declared_reads, acc.reads) || !covers(tx.declared_writes, acc.writes))
            continue; // misdeclared: unverifiable, never propose it
        // Reads are disjoint from every pending write, so the path (and gas)
        // at the settled state is the path at execution time.
        candidates.push_back(&tx);
        gas.push_back(gas_actual(tx, *ctx.settled).micro);
        access.push_back(std::move(acc));
    }

    if (candidates.empty()) {
        BuildResult r;
        r.block.round = ctx.round;
        r.block.proposer = ctx.proposer;
        r.no_independent = true;
        r.nontriviality_shortfall = nontriviality_floor(ctx) > 0;
        r.conflict_filtered = std::move(conflicts);
        return r;
    }

    BuildResult result = assemble_by_gas(ctx, candidates, gas);
    result.conflict_filtered = std::move(conflicts);
    for (const Transaction& tx : result.block.txs) {
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (candidates[i]->id == tx.id) {
                result.block.declared_write_union.insert(access[i].writes.begin(),
                                                         access[i].writes.end());
                break;
            }
        }
    }
    if (!result.block.txs.empty())
        result.block.declared_write_union.insert(static_cast<Address>(ctx.proposer));
    return result;
}

Block reorder_hot(const Block& b, const std::vector<Transaction>& mempool, const StateSnapshot& st) {
    Block out = b;
    const std::size_t n = out.txs.size();
    if (n < 2) return out;

    std::vector<AccessSets> access(n);
    std::vector<std::size_t> demand(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        access[i] = actual_access_sets(out.txs[i], st);
        for (const Transaction& m : mempool) {
            if (out.contains(m.id)) continue;
            if (intersects(m.declared_reads, access[i].writes)) ++demand[i];
        }
    }

    auto disjoint = [&](std::size_t a, std::size_t c) {
        return !intersects(access[a].reads, access[c].reads) &&
               !intersects(access[a].reads, access[c].writes) &&
               !intersects(access[a].writes, access[c].reads) &&
               !intersects(access[a].writes, access[c].writes);
    };

    // Bubble passes: a swap needs a strictly higher demand behind a lower one
    // and fully disjoint access sets, so equal-demand order is stable and the
    // executed final state cannot change.
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (demand[i] < demand[i + 1] && disjoint(i, i + 1)) {
                std::swap(out.txs[i], out.txs[i + 1]);
                std::swap(access[i], access[i + 1]);
                std::swap(demand[i], demand[i + 1]);
                swapped = true;
            }
        }
    }
    return out;
}

} // namespace chainsim
