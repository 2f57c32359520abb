#include "chainsim/serde.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace chainsim {

namespace {

const char* cmp_name(Cmp c) {
    switch (c) {
        case Cmp::Lt: return "lt";
        case Cmp::Le: return "le";
        case Cmp::Eq: return "eq";
        case Cmp::Ge: return "ge";
        case Cmp::Gt: return "gt";
    }
    return "?";
}

Cmp cmp_from(const std::string& s) {
    if (s == "lt") return Cmp::Lt;
    if (s == "le") return Cmp::Le;
    if (s == "eq") return Cmp::Eq;
    if (s == "ge") return Cmp::Ge;
    if (s == "gt") return Cmp::Gt;
    throw std::runtime_error("serde: bad comparator '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::int64_t parse_i64(const std::string& s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw std::runtime_error("serde: bad integer '" + s + "'");
    return v;
}

std::string join_addrs(const std::set<Address>& addrs) {
    if (addrs.empty()) return "-";
    std::string out;
    for (Address a : addrs) {
        if (!out.empty()) out += ',';
        out += std::to_string(a);
    }
    return out;
}

std::set<Address> addrs_from(const std::string& s) {
    std::set<Address> out;
    if (s == "-") return out;
    for (const std::string& tok : split(s, ','))
        out.insert(static_cast<Address>(parse_i64(tok)));
    return out;
}

} // namespace

std::string to_line(const Transaction& tx) {
    std::ostringstream os;
    os << "tx\t" << tx.id << '\t' << tx.sender << '\t' << tx.price << '\t' << tx.est.micro << '\t'
       << tx.submit_round << '\t' << join_addrs(tx.declared_reads) << '\t'
       << join_addrs(tx.declared_writes) << '\t';
    if (tx.steps.empty()) {
        os << '-';
    } else {
        for (size_t i = 0; i < tx.steps.size(); ++i) {
            const Step& s = tx.steps[i];
            if (i) os << ';';
            if (s.guard)
                os << 'g' << s.guard->cell << ',' << cmp_name(s.guard->op) << ',' << s.guard->literal;
            else
                os << '-';
            os << '|' << s.gas_cost.micro << '|';
            if (s.effects.empty()) {
                os << '-';
            } else {
                for (size_t j = 0; j < s.effects.size(); ++j) {
                    if (j) os << ',';
                    if (const auto* w = std::get_if<WriteCell>(&s.effects[j]))
                        os << 'w' << w->cell << '=' << w->value;
                    else {
                        const auto& t = std::get<Transfer>(s.effects[j]);
                        os << 't' << t.to << '+' << t.amount;
                    }
                }
            }
        }
    }
    return os.str();
}

std::string to_line(const StateSnapshot& st) {
    std::ostringstream os;
    os << "st\t" << st.settled_round << '\t';
    if (st.cells.empty()) {
        os << '-';
    } else {
        bool first = true;
        for (const auto& [a, v] : st.cells) {
            if (!first) os << ',';
            first = false;
            os << a << '=' << v;
        }
    }
    return os.str();
}

Transaction tx_from_line(const std::string& line) {
    std::vector<std::string> f = split(line, '\t');
    if (f.size() != 9 || f[0] != "tx") throw std::runtime_error("serde: not a tx record");
    Transaction tx;
    tx.id = static_cast<TxId>(parse_i64(f[1]));
    tx.sender = static_cast<AccountId>(parse_i64(f[2]));
    tx.price = parse_i64(f[3]);
    tx.est = GasAmount{parse_i64(f[4])};
    tx.submit_round = static_cast<std::uint64_t>(parse_i64(f[5]));
    tx.declared_reads = addrs_from(f[6]);
    tx.declared_writes = addrs_from(f[7]);
    if (f[8] != "-") {
        for (const std::string& stok : split(f[8], ';')) {
            std::vector<std::string> parts = split(stok, '|');
            if (parts.size() != 3) throw std::runtime_error("serde: bad step '" + stok + "'");
            Step step;
            if (parts[0] != "-") {
                if (parts[0].empty() || parts[0][0] != 'g')
                    throw std::runtime_error("serde: bad guard '" + parts[0] + "'");
                std::vector<std::string> g = split(parts[0].substr(1), ',');
                if (g.size() != 3) throw std::runtime_error("serde: bad guard '" + parts[0] + "'");
                step.guard = Guard{static_cast<Address>(parse_i64(g[0])), cmp_from(g[1]), parse_i64(g[2])};
            }
            step.gas_cost = GasAmount{parse_i64(parts[1])};
            if (parts[2] != "-") {
                for (const std::string& etok : split(parts[2], ',')) {
                    if (etok.empty()) throw std::runtime_error("serde: empty effect");
                    if (etok[0] == 'w') {
                        auto eq = etok.find('=');
                        if (eq == std::string::npos) throw std::runtime_error("serde: bad effect '" + etok + "'");
                        step.effects.push_back(WriteCell{static_cast<Address>(parse_i64(etok.substr(1, eq - 1))),
                                                         parse_i64(etok.substr(eq + 1))});
                    } else if (etok[0] == 't') {
                        auto plus = etok.find('+');
                        if (plus == std::string::npos) throw std::runtime_error("serde: bad effect '" + etok + "'");
                        step.effects.push_back(Transfer{static_cast<AccountId>(parse_i64(etok.substr(1, plus - 1))),
                                                        parse_i64(etok.substr(plus + 1))});
                    } else {
                        throw std::runtime_error("serde: bad effect '" + etok + "'");
                    }
                }
            }
            tx.steps.push_back(std::move(step));
        }
    }
    return tx;
}

StateSnapshot state_from_line(const std::string& line) {
    std::vector<std::string> f = split(line, '\t');
    if (f.size() != 3 || f[0] != "st") throw std::runtime_error("serde: not a state record");
    StateSnapshot st;
    st.settled_round = static_cast<std::uint64_t>(parse_i64(f[1]));
    if (f[2] != "-") {
        for (const std::string& tok : split(f[2], ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::runtime_error("serde: bad cell '" + tok + "'");
            st.set(static_cast<Address>(parse_i64(tok.substr(0, eq))), parse_i64(tok.substr(eq + 1)));
        }
    }
    return st;
}

} // namespace chainsim
