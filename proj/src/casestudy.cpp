#include "chainsim/casestudy.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace chainsim {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::optional<std::int64_t> to_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

} // namespace

TraceIngest ingest_trace_text(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line))
        throw TraceError(TraceError::Kind::MalformedHeader, "trace: empty input");

    int col_id = -1, col_limit = -1, col_used = -1, col_price = -1;
    std::vector<std::string> header = split_csv(line);
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string h = header[i];
        std::transform(h.begin(), h.end(), h.begin(), [](unsigned char c) { return std::tolower(c); });
        if (h == "tx_id" || h == "txid" || h == "hash") col_id = static_cast<int>(i);
        else if (h == "gas_limit" || h == "gaslimit" || h == "gas_budget") col_limit = static_cast<int>(i);
        else if (h == "gas_used" || h == "gasused") col_used = static_cast<int>(i);
        else if (h == "price" || h == "gas_price") col_price = static_cast<int>(i);
    }
    if (col_id < 0 || col_limit < 0 || col_used < 0)
        throw TraceError(TraceError::Kind::MalformedHeader,
                         "trace: header must name tx_id, gas_limit and gas_used");

    TraceIngest ingest;
    while (std::getline(ss, line)) {
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> f = split_csv(line);
        std::size_t need = static_cast<std::size_t>(std::max({col_id, col_limit, col_used})) + 1;
        if (f.size() < need) {
            ++ingest.malformed_rows;
            continue;
        }
        auto limit = to_int(f[static_cast<std::size_t>(col_limit)]);
        auto used = to_int(f[static_cast<std::size_t>(col_used)]);
        if (!limit || !used || *limit < 0 || *used < 0) {
            ++ingest.malformed_rows;
            continue;
        }
        if (*used > *limit) {
            ++ingest.invariant_rows;
            continue;
        }
        TraceRow row;
        row.tx_id = f[static_cast<std::size_t>(col_id)];
        row.gas_limit = *limit;
        row.gas_used = *used;
        if (col_price >= 0 && static_cast<std::size_t>(col_price) < f.size())
            row.price = to_int(f[static_cast<std::size_t>(col_price)]);
        ingest.rows.push_back(std::move(row));
    }
    return ingest;
}

TraceIngest ingest_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TraceError(TraceError::Kind::FileNotFound, "trace: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return ingest_trace_text(buf.str());
}

namespace {

double nearest_rank(const std::vector<double>& sorted_asc, int k) {
    // 1-based nearest-rank: index ceil(k*n/100).
    std::size_t n = sorted_asc.size();
    std::size_t idx = (static_cast<std::size_t>(k) * n + 99) / 100;
    if (idx < 1) idx = 1;
    if (idx > n) idx = n;
    return sorted_asc[idx - 1];
}

} // namespace

OverestimationStats overestimation_stats(const std::vector<TraceRow>& rows) {
    OverestimationStats s;
    std::vector<double> over;
    for (const TraceRow& r : rows) {
        if (r.gas_used == 0) {
            ++s.zero_use_rows;
            continue;
        }
        over.push_back(100.0 * static_cast<double>(r.gas_limit - r.gas_used) /
                       static_cast<double>(r.gas_used));
        s.sum_used += r.gas_used;
        s.sum_limit += r.gas_limit;
    }
    if (over.empty())
        throw TraceError(TraceError::Kind::NoUsableRows, "trace: no rows with gas_used > 0");
    s.usable_rows = over.size();

    double total = 0;
    for (double o : over) total += o;
    s.mean_pct = total / static_cast<double>(over.size());

    std::sort(over.begin(), over.end());
    s.p10 = nearest_rank(over, 10);
    s.p25 = nearest_rank(over, 25);
    s.p50 = nearest_rank(over, 50);
    s.p75 = nearest_rank(over, 75);
    s.p90 = nearest_rank(over, 90);
    return s;
}

EconReport attack_economics(const EconParams& p) {
    EconReport r;
    double headroom = p.factor >= 1.0 ? (p.factor - 1.0) / p.factor : 0.0;
    r.captured_rewards_usd = p.total_rewards_usd * (1.0 - p.alpha) * headroom * p.silent_factor;
    r.attacker_cost_eth =
        p.priority_fee_gwei * p.attack_tx_gas * p.blocks_per_year * (1.0 - p.alpha) * p.silent_factor / 1e9;
    r.attacker_cost_usd = r.attacker_cost_eth * p.eth_price_usd;
    r.net_usd = r.captured_rewards_usd - r.attacker_cost_usd;
    return r;
}

std::string stats_report_json(const OverestimationStats& s, double beta_in) {
    nlohmann::ordered_json j;
    j["usable_rows"] = s.usable_rows;
    j["zero_use_rows"] = s.zero_use_rows;
    j["mean_overestimation_pct"] = s.mean_pct;
    j["percentiles_ascending"] = {{"p10", s.p10}, {"p25", s.p25}, {"p50", s.p50},
                                  {"p75", s.p75}, {"p90", s.p90}};
    // Same distribution read from the top: descending pK == ascending p(100-K).
    j["percentiles_descending"] = {{"p10", s.p90}, {"p25", s.p75}, {"p50", s.p50},
                                   {"p75", s.p25}, {"p90", s.p10}};
    j["factor_ratio_of_sums"] = s.factor_ratio_of_sums();
    j["factor_mean_of_ratios"] = s.factor_mean_of_ratios();
    j["beta_in"] = beta_in;
    j["effective_beta_ratio_of_sums"] = s.effective_beta(beta_in);
    j["effective_beta_mean_of_ratios"] = s.effective_beta_mean_of_ratios(beta_in);
    return j.dump(2);
}

std::string econ_report_json(const EconParams& p, const EconReport& r) {
    nlohmann::ordered_json j;
    j["params"] = {{"total_rewards_usd", p.total_rewards_usd},
                   {"alpha", p.alpha},
                   {"factor", p.factor},
                   {"priority_fee_gwei", p.priority_fee_gwei},
                   {"attack_tx_gas", p.attack_tx_gas},
                   {"blocks_per_year", p.blocks_per_year},
                   {"eth_price_usd", p.eth_price_usd},
                   {"silent_factor", p.silent_factor}};
    j["captured_rewards_usd"] = r.captured_rewards_usd;
    j["attacker_cost_eth"] = r.attacker_cost_eth;
    j["attacker_cost_usd"] = r.attacker_cost_usd;
    j["net_usd"] = r.net_usd;
    return j.dump(2);
}

} // namespace chainsim
