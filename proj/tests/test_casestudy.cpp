#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "chainsim/casestudy.hpp"
#include "chainsim/rng.hpp"

using namespace chainsim;

namespace {

TraceRow row(std::int64_t limit, std::int64_t used) {
    return TraceRow{"t", limit, used, std::nullopt};
}

//! Independent nearest-rank reference, written against the definition.
double oracle_percentile(std::vector<double> values, int k) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(k / 100.0 * static_cast<double>(n)));
    if (rank < 1) rank = 1;
    return values[rank - 1];
}

} // namespace

TEST_CASE("well-formed traces ingest cleanly") {
    TraceIngest in = ingest_trace_text(
        "tx_id,gas_limit,gas_used,price\n"
        "a,100,50,3\n"
        "b,200,200,4\n"
        "c,300,10,5\n");
    CHECK(in.rows.size() == 3);
    CHECK(in.malformed_rows == 0);
    CHECK(in.invariant_rows == 0);
    CHECK(in.rows[0].price == 3);
}

TEST_CASE("rows using more than their limit are excluded and counted") {
    TraceIngest in = ingest_trace_text(
        "tx_id,gas_limit,gas_used\n"
        "a,100,150\n"
        "b,100,90\n");
    CHECK(in.rows.size() == 1);
    CHECK(in.invariant_rows == 1);
}

TEST_CASE("an empty file with a header ingests to nothing") {
    TraceIngest in = ingest_trace_text("tx_id,gas_limit,gas_used\n");
    CHECK(in.rows.empty());
}

TEST_CASE("missing files and broken headers are distinct errors") {
    CHECK_THROWS_AS(ingest_trace("/nonexistent/path/trace.csv"), TraceError);
    try {
        ingest_trace("/nonexistent/path/trace.csv");
    } catch (const TraceError& e) {
        CHECK(e.kind == TraceError::Kind::FileNotFound);
    }
    CHECK_THROWS_AS(ingest_trace_text("foo,bar\n1,2\n"), TraceError);
    try {
        ingest_trace_text("foo,bar\n1,2\n");
    } catch (const TraceError& e) {
        CHECK(e.kind == TraceError::Kind::MalformedHeader);
    }
}

TEST_CASE("column order is header-driven") {
    TraceIngest in = ingest_trace_text(
        "gas_used,tx_id,gas_limit\n"
        "10,a,40\n");
    REQUIRE(in.rows.size() == 1);
    CHECK(in.rows[0].gas_used == 10);
    CHECK(in.rows[0].gas_limit == 40);
}

TEST_CASE("the demo-contract ratio shows up as a factor of 715") {
    OverestimationStats s = overestimation_stats({row(715, 1)});
    CHECK(s.mean_pct == doctest::Approx(71'400.0));
    CHECK(s.factor_ratio_of_sums() == doctest::Approx(715.0));
    CHECK(s.factor_mean_of_ratios() == doctest::Approx(715.0));
}

TEST_CASE("perfectly estimated traces overestimate by zero") {
    OverestimationStats s = overestimation_stats({row(100, 100), row(7, 7), row(42, 42)});
    CHECK(s.mean_pct == 0.0);
    CHECK(s.p10 == 0.0);
    CHECK(s.p90 == 0.0);
}

TEST_CASE("a tiny trace by hand") {
    // Ratios 100%, 200%, 300%: mean 200, median (nearest rank 2 of 3) 200.
    OverestimationStats s = overestimation_stats({row(2, 1), row(3, 1), row(4, 1)});
    CHECK(s.mean_pct == doctest::Approx(200.0));
    CHECK(s.p50 == doctest::Approx(200.0));
}

TEST_CASE("zero-use rows are reported, not folded into ratios") {
    OverestimationStats s = overestimation_stats({row(10, 0), row(100, 50)});
    CHECK(s.zero_use_rows == 1);
    CHECK(s.usable_rows == 1);
    CHECK(s.mean_pct == doctest::Approx(100.0));
    CHECK_THROWS_AS(overestimation_stats({row(10, 0)}), TraceError);
}

TEST_CASE("percentiles match the sort-and-index reference") {
    Rng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<TraceRow> rows;
        std::vector<double> over;
        std::size_t n = static_cast<std::size_t>(rng.uniform(1, 100));
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t used = rng.uniform_i64(1, 1000);
            std::int64_t limit = used + rng.uniform_i64(0, 5000);
            rows.push_back(row(limit, used));
            over.push_back(100.0 * static_cast<double>(limit - used) / static_cast<double>(used));
        }
        OverestimationStats s = overestimation_stats(rows);
        CHECK(s.p10 == oracle_percentile(over, 10));
        CHECK(s.p25 == oracle_percentile(over, 25));
        CHECK(s.p50 == oracle_percentile(over, 50));
        CHECK(s.p75 == oracle_percentile(over, 75));
        CHECK(s.p90 == oracle_percentile(over, 90));
        CHECK(s.p10 <= s.p25);
        CHECK(s.p25 <= s.p50);
        CHECK(s.p50 <= s.p75);
        CHECK(s.p75 <= s.p90);
    }
}

TEST_CASE("statistics ignore row order") {
    std::vector<TraceRow> rows = {row(100, 50), row(715, 1), row(40, 40), row(90, 30)};
    OverestimationStats a = overestimation_stats(rows);
    std::reverse(rows.begin(), rows.end());
    OverestimationStats b = overestimation_stats(rows);
    CHECK(a.mean_pct == b.mean_pct);
    CHECK(a.p50 == b.p50);
    CHECK(a.sum_limit == b.sum_limit);
}

TEST_CASE("packing by declared gas dilutes the speed-up") {
    // sum(used)=696 over sum(limit)=2455 on the bundled fixture's clean rows.
    OverestimationStats s = overestimation_stats(
        {row(100, 50), row(300, 100), row(150, 100), row(400, 100), row(120, 80), row(500, 125),
         row(80, 80), row(90, 60), row(715, 1)});
    CHECK(s.effective_beta(5.0) == doctest::Approx(5.0 * 696.0 / 2455.0));
    CHECK(s.effective_beta_mean_of_ratios(5.0) ==
          doctest::Approx(5.0 / (1.0 + s.mean_pct / 100.0)));
    // The two aggregations genuinely disagree on skewed data.
    CHECK(s.effective_beta(5.0) > 10.0 * s.effective_beta_mean_of_ratios(5.0));
}

TEST_CASE("reward capture at the reported scale") {
    EconParams p; // defaults: $352M rewards, 10% adversary, factor 715
    EconReport r = attack_economics(p);
    CHECK(std::abs(r.captured_rewards_usd - 316e6) <= 0.01 * 316e6);
}

TEST_CASE("a year of inclusion fees at fifty gwei") {
    EconParams p;
    p.alpha = 0.0;
    EconReport r = attack_economics(p);
    CHECK(r.attacker_cost_eth == doctest::Approx(6500.0));
    CHECK(r.attacker_cost_usd == doctest::Approx(6500.0 * p.eth_price_usd));
}

TEST_CASE("no overestimation headroom means nothing to capture") {
    EconParams p;
    p.factor = 1.0;
    CHECK(attack_economics(p).captured_rewards_usd == 0.0);
}

TEST_CASE("the model is linear in rewards and in fees") {
    EconParams p;
    EconReport base = attack_economics(p);
    EconParams scaled = p;
    scaled.total_rewards_usd *= 3.0;
    CHECK(attack_economics(scaled).captured_rewards_usd ==
          doctest::Approx(3.0 * base.captured_rewards_usd));
    EconParams fee = p;
    fee.priority_fee_gwei *= 7.0;
    CHECK(attack_economics(fee).attacker_cost_eth == doctest::Approx(7.0 * base.attacker_cost_eth));
}

TEST_CASE("the silent variant scales both sides") {
    EconParams p;
    p.silent_factor = 0.1;
    EconReport full = attack_economics(EconParams{});
    EconReport silent = attack_economics(p);
    CHECK(silent.captured_rewards_usd == doctest::Approx(0.1 * full.captured_rewards_usd));
    CHECK(silent.attacker_cost_eth == doctest::Approx(0.1 * full.attacker_cost_eth));
}
