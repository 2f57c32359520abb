#include "chainsim/knapsack.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace chainsim {

namespace {

constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::min();
constexpr std::size_t kMaxStates = 4'000'000; // weight-state x count cells across all suffixes

//! best_by_count[k]: best value over subsets of the suffix using exactly this
//! weight and exactly k items; kUnreachable where no subset exists.
using WeightStates = std::map<std::int64_t, std::vector<std::int64_t>>;

//! Best value over the suffix with weight budget c and count budget k.
std::int64_t query(const WeightStates& states, std::int64_t c, std::size_t k) {
    std::int64_t best = kUnreachable;
    for (const auto& [w, by_count] : states) {
        if (w > c) break;
        std::size_t kmax = std::min(k, by_count.size() - 1);
        for (std::size_t i = 0; i <= kmax; ++i)
            if (by_count[i] != kUnreachable) best = std::max(best, by_count[i]);
    }
    return best;
}

} // namespace

KnapsackResult solve_knapsack(const std::vector<KnapsackItem>& items, std::int64_t capacity,
                              int count_cap) {
    KnapsackResult result;
    if (items.empty() || count_cap <= 0 || capacity < 0) return result;

    std::vector<KnapsackItem> sorted = items;
    std::sort(sorted.begin(), sorted.end(),
              [](const KnapsackItem& a, const KnapsackItem& b) { return a.id < b.id; });
    for (const KnapsackItem& it : sorted)
        if (it.weight < 0) throw std::runtime_error("knapsack: negative weight");

    const std::size_t n = sorted.size();
    const std::size_t kmax = std::min<std::size_t>(static_cast<std::size_t>(count_cap), n);

    // Suffix tables over reachable weight sums, built backwards. Reachable
    // sums stay sparse both for lattice weights (few multiples fit the cap)
    // and for small pools (at most 2^n sums).
    std::vector<WeightStates> suffix(n + 1);
    suffix[n][0] = std::vector<std::int64_t>(kmax + 1, kUnreachable);
    suffix[n][0][0] = 0;

    std::size_t total_cells = 0;
    for (std::size_t i = n; i-- > 0;) {
        const std::int64_t w = sorted[i].weight;
        const std::int64_t v = sorted[i].value;
        WeightStates next = suffix[i + 1]; // skip-item states
        for (const auto& [sw, by_count] : suffix[i + 1]) {
            if (sw + w > capacity) continue;
            auto& slot = next[sw + w];
            if (slot.empty()) slot.assign(kmax + 1, kUnreachable);
            for (std::size_t k = 0; k + 1 <= kmax; ++k) {
                if (by_count[k] == kUnreachable) continue;
                slot[k + 1] = std::max(slot[k + 1], by_count[k] + v);
            }
        }
        suffix[i] = std::move(next);
        total_cells += suffix[i].size() * (kmax + 1);
        if (total_cells > kMaxStates)
            throw std::runtime_error("knapsack: instance exceeds supported scale");
    }

    const std::int64_t best = std::max<std::int64_t>(0, query(suffix[0], capacity, kmax));

    // Greedy rebuild in ascending id order: take an item whenever doing so
    // still reaches the optimum. Zero-weight zero-value items are left out;
    // builders pad those separately when a size floor demands it.
    std::int64_t c = capacity;
    std::size_t k = kmax;
    std::int64_t target = best;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t w = sorted[i].weight;
        const std::int64_t v = sorted[i].value;
        if (k == 0 || w > c) continue;
        if (w == 0 && v == 0) continue;
        std::int64_t rest = query(suffix[i + 1], c - w, k - 1);
        if (rest == kUnreachable || v + rest != target) continue;
        result.chosen.push_back(sorted[i].index);
        result.total_weight += w;
        result.total_value += v;
        c -= w;
        --k;
        target -= v;
    }
    return result;
}

bool subset_sum_exists(const std::vector<std::int64_t>& weights, std::int64_t target, int count_cap) {
    if (target == 0) return true;
    if (target < 0 || count_cap <= 0) return false;

    const std::size_t kmax = std::min<std::size_t>(static_cast<std::size_t>(count_cap), 63);
    // Reachable sums -> bitmask of achievable subset sizes (bit k: k items).
    std::map<std::int64_t, std::uint64_t> reach;
    reach[0] = 1;
    const std::uint64_t keep = kmax >= 63 ? ~0ULL : (1ULL << (kmax + 1)) - 1;
    for (std::int64_t w : weights) {
        if (w <= 0 || w > target) continue;
        // Iterate a snapshot so each item is used at most once.
        std::vector<std::pair<std::int64_t, std::uint64_t>> snapshot(reach.begin(), reach.end());
        for (const auto& [s, mask] : snapshot) {
            if (s + w > target) continue;
            reach[s + w] |= (mask << 1) & keep;
        }
        if (reach.size() > kMaxStates)
            throw std::runtime_error("subset sum: instance exceeds supported scale");
        auto hit = reach.find(target);
        if (hit != reach.end() && (hit->second & ~1ULL)) return true;
    }
    auto hit = reach.find(target);
    return hit != reach.end() && (hit->second & ~1ULL) != 0;
}

} // namespace chainsim
