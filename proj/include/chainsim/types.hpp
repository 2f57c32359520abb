#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "chainsim/gas.hpp"

namespace chainsim {

//! State cell index. Addresses [0, num_accounts) are account balance cells
//! (account k's balance lives at address k); everything above is a data cell.
using Address = std::uint32_t;
using AccountId = std::uint32_t;
using TxId = std::uint64_t;

struct StateLayout {
    std::uint32_t num_accounts{0};
    std::uint32_t num_data_cells{0};

    std::uint32_t state_size() const { return num_accounts + num_data_cells; }
    Address data_cell(std::uint32_t k) const { return num_accounts + k; }
    bool is_balance(Address a) const { return a < num_accounts; }
};

enum class Cmp { Lt, Le, Eq, Ge, Gt };

struct Guard {
    Address cell{0};
    Cmp op{Cmp::Eq};
    std::int64_t literal{0};
};

inline bool guard_holds(const Guard& g, std::int64_t cell_value) {
    switch (g.op) {
        case Cmp::Lt: return cell_value < g.literal;
        case Cmp::Le: return cell_value <= g.literal;
        case Cmp::Eq: return cell_value == g.literal;
        case Cmp::Ge: return cell_value >= g.literal;
        case Cmp::Gt: return cell_value > g.literal;
    }
    return false;
}

struct WriteCell {
    Address cell{0};
    std::int64_t value{0};
};

//! Moves min(amount, sender balance) from the transaction sender to `to`;
//! transfers never drive a balance negative.
struct Transfer {
    AccountId to{0};
    std::int64_t amount{0};
};

using Effect = std::variant<WriteCell, Transfer>;

//! One program step. gas_cost is charged whenever the step is reached,
//! whatever the guard says (the guard read itself costs the step's gas).
//! Control flow: no guard -> apply effects, continue; guard true -> apply
//! effects, then halt the transaction; guard false -> skip effects, continue.
struct Step {
    std::optional<Guard> guard;
    std::vector<Effect> effects;
    GasAmount gas_cost{0};
};

struct Transaction {
    TxId id{0};
    AccountId sender{0};
    std::int64_t price{0};      // fee per micro-unit of gas
    GasAmount est{0};           // client-declared gas bound; exceeding it aborts
    std::vector<Step> steps;
    std::set<Address> declared_reads;
    std::set<Address> declared_writes;
    std::uint64_t submit_round{0};

    friend bool operator==(const Transaction& a, const Transaction& b) {
        return a.id == b.id && a.sender == b.sender && a.price == b.price && a.est == b.est &&
               a.declared_reads == b.declared_reads && a.declared_writes == b.declared_writes &&
               a.submit_round == b.submit_round && same_steps(a, b);
    }

  private:
    static bool same_steps(const Transaction& a, const Transaction& b) {
        if (a.steps.size() != b.steps.size()) return false;
        for (size_t i = 0; i < a.steps.size(); ++i) {
            const Step& s = a.steps[i];
            const Step& t = b.steps[i];
            if (s.gas_cost != t.gas_cost || s.guard.has_value() != t.guard.has_value()) return false;
            if (s.guard && (s.guard->cell != t.guard->cell || s.guard->op != t.guard->op ||
                            s.guard->literal != t.guard->literal))
                return false;
            if (s.effects.size() != t.effects.size()) return false;
            for (size_t j = 0; j < s.effects.size(); ++j) {
                if (s.effects[j].index() != t.effects[j].index()) return false;
                if (auto* w = std::get_if<WriteCell>(&s.effects[j])) {
                    const auto& w2 = std::get<WriteCell>(t.effects[j]);
                    if (w->cell != w2.cell || w->value != w2.value) return false;
                } else {
                    const auto& x = std::get<Transfer>(s.effects[j]);
                    const auto& y = std::get<Transfer>(t.effects[j]);
                    if (x.to != y.to || x.amount != y.amount) return false;
                }
            }
        }
        return true;
    }
};

} // namespace chainsim
