#include "chainsim/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace chainsim {

const char* to_string(Mode m) {
    switch (m) {
        case Mode::Coupled: return "coupled";
        case Mode::Decoupled: return "decoupled";
        case Mode::Partial: return "partial";
    }
    return "?";
}

const char* to_string(BuilderKind b) {
    switch (b) {
        case BuilderKind::Knapsack: return "knapsack";
        case BuilderKind::GreedyEst: return "greedy-est";
        case BuilderKind::Partial: return "partial";
    }
    return "?";
}

void validate_config(const SimConfig& cfg) {
    if (cfg.seed == 0) throw ConfigError("config: seed is mandatory and must be nonzero");
    if (cfg.validators == 0) throw ConfigError("config: needs at least one validator");
    if (cfg.gas_cap_micro < kGasUnit ||
        cfg.gas_cap_micro > static_cast<std::int64_t>(cfg.validators) * kGasUnit)
        throw ConfigError("config: block gas capacity must lie in [1, validator count]");
    if (cfg.timing.delta_e_ms <= 0 || cfg.timing.delta_c_ms <= 0 || cfg.timing.delta_b_ms <= 0)
        throw ConfigError("config: stage times must be positive");
    if (cfg.workload.price_lo > cfg.workload.price_hi || cfg.workload.price_lo < 0)
        throw ConfigError("config: bad price range");
    if (cfg.workload.adversary == AdversaryKind::Gaslight && cfg.mode == Mode::Decoupled) {
        // Predicting the victim's selection needs the deterministic estimate
        // builder and a stale execution pipeline.
        if (cfg.builder != BuilderKind::GreedyEst)
            throw ConfigError("config: the gaslight workload targets the deterministic estimate builder");
        if (cfg.lag < 2)
            throw ConfigError("config: the gaslight workload needs execution at least two rounds behind");
    }
    if (cfg.workload.adversary == AdversaryKind::RationalValidator &&
        cfg.workload.rational_validator >= cfg.validators)
        throw ConfigError("config: rational validator index out of range");
    if (cfg.faulty_proposer && *cfg.faulty_proposer >= cfg.validators)
        throw ConfigError("config: faulty proposer index out of range");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw ConfigError("config: key '" + key + "' wants an integer, got '" + value + "'");
    return v;
}

//! Gas quantities accept either micro-units ("2500000") or decimal gas ("2.5").
std::int64_t parse_gas_micro(const std::string& key, const std::string& value) {
    auto dot = value.find('.');
    if (dot == std::string::npos) {
        std::int64_t v = parse_int(key, value);
        return v;
    }
    std::int64_t whole = dot == 0 ? 0 : parse_int(key, value.substr(0, dot));
    std::string frac = value.substr(dot + 1);
    if (frac.size() > 6 || frac.empty())
        throw ConfigError("config: key '" + key + "': at most six decimal places");
    frac.append(6 - frac.size(), '0');
    return whole * kGasUnit + parse_int(key, frac);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config: key '" + key + "' wants a boolean, got '" + value + "'");
}

using KV = std::map<std::string, std::string>;

void apply(SimConfig& cfg, const std::string& section, const KV& kv) {
    for (const auto& [key, value] : kv) {
        const std::string full = section + "." + key;
        if (section == "mode") {
            if (key == "mode") {
                if (value == "coupled") cfg.mode = Mode::Coupled;
                else if (value == "decoupled") cfg.mode = Mode::Decoupled;
                else if (value == "partial") cfg.mode = Mode::Partial;
                else throw ConfigError("config: unknown mode '" + value + "'");
            } else if (key == "rounds") cfg.rounds = static_cast<std::uint64_t>(parse_int(full, value));
            else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(full, value));
            else if (key == "gas_cap") cfg.gas_cap_micro = parse_gas_micro(full, value);
            else if (key == "lag") cfg.lag = static_cast<std::uint32_t>(parse_int(full, value));
            else if (key == "exec_shift_ms") cfg.exec_shift_ms = parse_int(full, value);
            else if (key == "builder") {
                if (value == "knapsack") cfg.builder = BuilderKind::Knapsack;
                else if (value == "greedy-est") cfg.builder = BuilderKind::GreedyEst;
                else if (value == "partial") cfg.builder = BuilderKind::Partial;
                else throw ConfigError("config: unknown builder '" + value + "'");
            } else if (key == "cost_model") {
                if (value == "current") cfg.cost_model.kind = CostModelKind::Current;
                else if (value == "full-estimate") cfg.cost_model.kind = CostModelKind::FullEstimate;
                else throw ConfigError("config: unknown cost model '" + value + "'");
            } else if (key == "c_base") cfg.cost_model.c_base = parse_int(full, value);
            else if (key == "reorder_hot") cfg.reorder_hot_enabled = parse_bool(full, value);
            else throw ConfigError("config: unknown key '" + full + "'");
        } else if (section == "timing") {
            if (key == "delta_e_ms") cfg.timing.delta_e_ms = parse_int(full, value);
            else if (key == "delta_c_ms") cfg.timing.delta_c_ms = parse_int(full, value);
            else if (key == "delta_b_ms") cfg.timing.delta_b_ms = parse_int(full, value);
            else throw ConfigError("config: unknown key '" + full + "'");
        } else if (section == "validators") {
            if (key == "count") cfg.validators = static_cast<std::uint32_t>(parse_int(full, value));
            else if (key == "rotation") {
                if (value == "round-robin") cfg.rotation = Rotation::RoundRobin;
                else if (value == "uniform") cfg.rotation = Rotation::UniformSeeded;
                else throw ConfigError("config: unknown rotation '" + value + "'");
            } else if (key == "faulty_proposer")
                cfg.faulty_proposer = static_cast<std::uint32_t>(parse_int(full, value));
            else throw ConfigError("config: unknown key '" + full + "'");
        } else if (section == "workload") {
            WorkloadSpec& w = cfg.workload;
            if (key == "rate") w.honest_rate = static_cast<std::uint32_t>(parse_int(full, value));
            else if (key == "initial_burst") w.initial_burst = static_cast<std::uint32_t>(parse_int(full, value));
            else if (key == "gas") {
                // comma-separated buckets "micro:weight", e.g. "1000000:3,500000:1"
                w.gas_dist.clear();
                std::stringstream ss(value);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    auto colon = tok.find(':');
                    GasBucket b;
                    b.micro = parse_gas_micro(full, colon == std::string::npos ? tok : tok.substr(0, colon));
                    b.weight = colon == std::string::npos
                                   ? 1u
                                   : static_cast<std::uint32_t>(parse_int(full, tok.substr(colon + 1)));
                    w.gas_dist.push_back(b);
                }
                if (w.gas_dist.empty()) throw ConfigError("config: empty gas distribution");
            } else if (key == "est_policy") {
                if (value == "exact") w.est_policy = EstPolicy::Exact;
                else if (value == "factor") w.est_policy = EstPolicy::Factor;
                else throw ConfigError("config: unknown est policy '" + value + "'");
            } else if (key == "est_factor") w.est_factor_micro = parse_gas_micro(full, value);
            else if (key == "price_lo") w.price_lo = parse_int(full, value);
            else if (key == "price_hi") w.price_hi = parse_int(full, value);
            else if (key == "accounts") w.honest_accounts = static_cast<std::uint32_t>(parse_int(full, value));
            else if (key == "fresh_accounts") w.fresh_accounts = parse_bool(full, value);
            else if (key == "conflict_all") w.conflict_all = parse_bool(full, value);
            else if (key == "initial_balance") w.initial_balance = parse_int(full, value);
            else throw ConfigError("config: unknown key '" + full + "'");
        } else if (section == "adversary") {
            WorkloadSpec& w = cfg.workload;
            if (key == "kind") {
                if (value == "none") w.adversary = AdversaryKind::None;
                else if (value == "gaslight") w.adversary = AdversaryKind::Gaslight;
                else if (value == "fund-drain") w.adversary = AdversaryKind::FundDrain;
                else if (value == "rational-validator") w.adversary = AdversaryKind::RationalValidator;
                else throw ConfigError("config: unknown adversary '" + value + "'");
            } else if (key == "junk_est") w.junk_est_micro = parse_gas_micro(full, value);
            else if (key == "junk_price") w.junk_price = parse_int(full, value);
            else if (key == "decoy_price") w.decoy_price = parse_int(full, value);
            else if (key == "attack_from_round") w.attack_from_round = static_cast<std::uint64_t>(parse_int(full, value));
            else if (key == "rational_validator") w.rational_validator = static_cast<std::uint32_t>(parse_int(full, value));
            else if (key == "drain_balance") w.drain_balance = parse_int(full, value);
            else if (key == "drain_round") w.drain_round = static_cast<std::uint64_t>(parse_int(full, value));
            else if (key == "drain_attack_from") w.drain_attack_from = static_cast<std::uint64_t>(parse_int(full, value));
            else if (key == "drain_attack_price") w.drain_attack_price = parse_int(full, value);
            else if (key == "drain_attack_est") w.drain_attack_est_micro = parse_gas_micro(full, value);
            else if (key == "drain_attack_txs") w.drain_attack_txs = static_cast<std::uint32_t>(parse_int(full, value));
            else throw ConfigError("config: unknown key '" + full + "'");
        } else {
            throw ConfigError("config: unknown section '" + section + "'");
        }
    }
}

} // namespace

SimConfig parse_config_text(const std::string& text) {
    SimConfig cfg;
    cfg.seed = 0; // the file must set one; entropy defaults are not reproducible
    std::map<std::string, KV> sections;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not key=value");
        if (section.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + " outside any section");
        sections[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    for (const auto& [name, kv] : sections) apply(cfg, name, kv);
    if (cfg.seed == 0) throw ConfigError("config: [mode] seed is mandatory");
    return cfg;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace chainsim
