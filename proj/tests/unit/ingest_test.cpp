// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/demand.hpp>
#include <blobmarket/ingest.hpp>
#include <blobmarket/simulator.hpp>

#include <oracles.hpp>

#include <gtest/gtest.h>

#include <map>
#include <sstream>

namespace blobmarket {
namespace {

using testing::plain_tx;

constexpr std::int64_t kT0 = 1'710'000'000;  // unix seconds of block 100

BlockRecord block(std::uint64_t number, std::vector<BlockTxRecord> txs = {})
{
    BlockRecord b;
    b.block_number = number;
    b.timestamp = kT0 + 12 * static_cast<std::int64_t>(number - 100);
    b.builder = "b";
    b.gas_used = 10'000'000;
    b.base_fee_per_gas = Wei::gwei(5);
    for (const auto& t : txs)
        b.gas_used += t.gas_usage;
    b.txs = std::move(txs);
    return b;
}

BlockTxRecord rec(const BlobTx& tx)
{
    return {tx.id, "", tx.sender, tx.num_blobs, tx.gas_usage, tx.priority_fee_per_gas};
}

std::int64_t ms_before_block(std::uint64_t number, std::int64_t lead_ms)
{
    return (kT0 + 12 * static_cast<std::int64_t>(number - 100)) * 1000 - lead_ms;
}

TEST(BlocksCsv, RoundTrip)
{
    auto a = block(100, {{"x", "", "s1", 2, 21'000, Wei::gwei(1)}, {"y,z", "b3", "s2", 3, 50'000, 7}});
    a.is_pbs = true;
    const auto empty = block(101);
    std::stringstream s;
    write_blocks_csv(s, {a, empty});
    const auto back = read_blocks_csv(s);
    EXPECT_TRUE(back.issues.empty());
    ASSERT_EQ(back.blocks.size(), 2u);
    EXPECT_EQ(back.blocks[0].txs.size(), 2u);
    EXPECT_EQ(back.blocks[0].txs[1].tx_id, "y,z");
    EXPECT_EQ(back.blocks[0].txs[1].option_id, "b3");
    EXPECT_EQ(back.blocks[0].blob_count(), 5u);
    EXPECT_EQ(back.blocks[0].is_pbs, std::optional<bool>{true});
    EXPECT_FALSE(back.blocks[1].is_pbs);
    EXPECT_TRUE(back.blocks[1].txs.empty());
    EXPECT_EQ(back.blocks[1].base_fee_per_gas, Wei::gwei(5));
}

TEST(BlocksCsv, MalformedRowsMarkTheirBlock)
{
    std::stringstream s;
    s << "block_number,timestamp,builder,is_pbs,gas_used,gas_limit,base_fee_per_gas_wei,"
         "excess_blob_gas,tx_id,option_id,sender,num_blobs,gas_usage,priority_fee_per_gas_wei\n"
      << "1,100,b,,10021000,30000000,5,0,a,,s,1,21000,1\n"
      << "2,112,b,,10021000,30000000,5,0,b,,s,many,21000,1\n"
      << "three,124,b,,10000000,30000000,5,0,,,,,,\n"
      << "4,136,b,,10000000,30000000,5,0,,,,,,\n";
    const auto r = read_blocks_csv(s);
    ASSERT_EQ(r.blocks.size(), 3u);
    EXPECT_FALSE(r.blocks[0].malformed);
    EXPECT_TRUE(r.blocks[1].malformed);
    EXPECT_FALSE(r.blocks[2].malformed);
    ASSERT_EQ(r.issues.size(), 2u);
    EXPECT_EQ(r.issues[0].line, 3u);
    EXPECT_EQ(r.issues[1].line, 4u);

    const auto c = classify_trace({r.blocks, {}}, EligibilityWindow{}, ProtocolParams{});
    EXPECT_EQ(c.malformed_blocks, 1u);
    std::ostringstream out;
    write_classification_csv(out, c);
    EXPECT_NE(out.str().find("2,Malformed,"), std::string::npos);
    EXPECT_EQ(summarize(c).blocks_total, 2u);
}

TEST(ExpectedBlockTime, PreviousPlusSlotOrOwnTimestamp)
{
    std::vector<BlockRecord> blocks{block(100), block(101), block(103)};
    blocks[1].timestamp += 3;  // late block
    const ProtocolParams p;
    EXPECT_EQ(expected_block_time_ms(blocks, 0, p), kT0 * 1000);
    EXPECT_EQ(expected_block_time_ms(blocks, 1, p), (kT0 + 12) * 1000);
    EXPECT_EQ(expected_block_time_ms(blocks, 2, p), blocks[2].timestamp * 1000);
}

TEST(ClassifyTrace, GreedyExampleEmbedded)
{
    const auto a = plain_tx("a", 5, 200, ms_before_block(101, 10'000), 21'000);
    const auto b = plain_tx("b", 3, 199, ms_before_block(101, 10'000), 21'000);
    const auto c = plain_tx("c", 3, 199, ms_before_block(101, 10'000), 21'000);
    const Trace trace{{block(100), block(101, {rec(a)}), block(102, {rec(b), rec(c)})}, {a, b, c}};
    const auto r = classify_trace(trace, EligibilityWindow{}, ProtocolParams{});
    ASSERT_EQ(r.blocks.size(), 3u);
    EXPECT_EQ(r.blocks[0].classification.verdict, Verdict::NoBlobs);
    const auto& sub = r.blocks[1].classification;
    EXPECT_EQ(sub.verdict, Verdict::Suboptimal);
    EXPECT_EQ(format_ratio(*sub.relative_loss), "0.497487");
    // By block 102 the 5-blob bid is gone; greedy agrees with optimal.
    EXPECT_EQ(r.blocks[2].classification.verdict, Verdict::Unknown);
    EXPECT_EQ(r.unresolved_refs, 0u);

    ASSERT_EQ(r.delays.size(), 3u);
    EXPECT_EQ(r.delays[0].delay.blocks, 0);
    EXPECT_EQ(r.delays[0].delay.millis, 10'000);
    EXPECT_EQ(r.delays[1].delay.blocks, 1);
}

TEST(ClassifyTrace, UniqueEligibleTxEveryBlock)
{
    std::vector<BlockRecord> blocks;
    std::vector<BlobTx> mempool;
    for (std::uint64_t n = 100; n < 120; ++n)
    {
        auto tx = plain_tx("t" + std::to_string(n), 1 + n % 6, 1 + n, ms_before_block(n, 6'000));
        blocks.push_back(block(n, {rec(tx)}));
        mempool.push_back(tx);
    }
    const auto r = classify_trace({blocks, mempool}, EligibilityWindow{}, ProtocolParams{});
    for (const auto& row : r.blocks)
    {
        const auto v = row.classification.verdict;
        EXPECT_TRUE(v == Verdict::Unknown || v == Verdict::Optimal);
        EXPECT_EQ(*row.classification.relative_loss, Ratio(0));
    }
}

TEST(ClassifyTrace, EmptyMempoolMeansUnknown)
{
    const auto a = plain_tx("a", 5, 200, 0);
    const auto b = plain_tx("b", 1, 3, 0);
    const Trace trace{{block(100, {rec(a)}), block(101, {rec(b)}), block(102)}, {}};
    const auto r = classify_trace(trace, EligibilityWindow{}, ProtocolParams{});
    EXPECT_EQ(r.blocks[0].classification.verdict, Verdict::Unknown);
    EXPECT_EQ(r.blocks[1].classification.verdict, Verdict::Unknown);
    EXPECT_EQ(r.blocks[2].classification.verdict, Verdict::NoBlobs);
    EXPECT_EQ(r.unresolved_refs, 2u);
    EXPECT_TRUE(r.delays.empty());
}

TEST(ClassifyTrace, CandidatesMustBeIncludedLater)
{
    const auto actual = plain_tx("a", 3, 10, ms_before_block(101, 10'000));
    const auto never = plain_tx("never", 3, 1'000, ms_before_block(101, 10'000));
    const auto earlier = plain_tx("earlier", 3, 1'000, ms_before_block(100, 10'000));
    const auto later = plain_tx("later", 3, 20, ms_before_block(101, 10'000));
    const auto too_fresh = plain_tx("fresh", 3, 1'000, ms_before_block(101, 3'000));
    const Trace trace{{block(100, {rec(earlier)}), block(101, {rec(actual)}),
                          block(102, {rec(later), rec(too_fresh)})},
        {actual, never, earlier, later, too_fresh}};
    const auto r = classify_trace(trace, EligibilityWindow{}, ProtocolParams{});
    // Only "later" joins "a" at block 101; "never", "earlier" and "fresh"
    // would each have raised the optimum.
    EXPECT_EQ(r.blocks[1].classification.optimal_revenue, Wei{30 * 21'000});
    EXPECT_EQ(r.blocks[1].classification.verdict, Verdict::Suboptimal);
}

TEST(ClassifyTrace, ClockSkewSkipsDelay)
{
    const auto a = plain_tx("a", 1, 1, (kT0 + 60) * 1000);
    const Trace trace{{block(100, {rec(a)})}, {a}};
    const auto r = classify_trace(trace, EligibilityWindow{}, ProtocolParams{});
    EXPECT_EQ(r.clock_skew, 1u);
    EXPECT_TRUE(r.delays.empty());
}

TEST(ClassifyTrace, PureFunctionOfInput)
{
    auto s = preset("blobscriptions");
    s.horizon_slots = 300;
    const auto trace = run(s).chain.trace;
    std::ostringstream a, b;
    write_classification_csv(a, classify_trace(trace, EligibilityWindow{}, s.params));
    write_classification_csv(b, classify_trace(trace, EligibilityWindow{}, s.params));
    EXPECT_EQ(a.str(), b.str());
}

TEST(ClassifyTrace, RoundTripsSimulatorVerdicts)
{
    auto s = preset("layerzero");
    s.horizon_slots = 700;
    s.strategies[1].subset_bids = true;  // exercise option ids in the trace
    const auto sim = run(s);

    std::stringstream blocks_csv, mempool_csv;
    write_blocks_csv(blocks_csv, sim.chain.trace.blocks);
    write_transactions_csv(mempool_csv, sim.chain.trace.mempool);
    const auto blocks = read_blocks_csv(blocks_csv);
    const auto mempool = read_transactions_csv(mempool_csv);
    ASSERT_TRUE(blocks.issues.empty());
    ASSERT_TRUE(mempool.issues.empty());

    const auto r = classify_trace({blocks.blocks, mempool.transactions}, s.window, s.params);
    ASSERT_EQ(r.blocks.size(), sim.metrics.slots.size());
    for (std::size_t i = 0; i < r.blocks.size(); ++i)
    {
        const auto& a = sim.metrics.slots[i].classification;
        const auto& b = r.blocks[i].classification;
        ASSERT_FALSE(r.blocks[i].malformed);
        EXPECT_EQ(a.verdict, b.verdict) << "slot " << i + 1;
        EXPECT_EQ(a.optimal_revenue, b.optimal_revenue) << "slot " << i + 1;
        EXPECT_EQ(a.relative_loss, b.relative_loss) << "slot " << i + 1;
    }

    // Public transactions get the same delays from both sides.
    std::map<std::string, InclusionDelay> sim_delays;
    for (const auto& tx : sim.metrics.txs)
        sim_delays[tx.tx_id] = tx.delay;
    for (const auto& d : r.delays)
    {
        ASSERT_TRUE(sim_delays.contains(d.tx_id));
        EXPECT_EQ(sim_delays[d.tx_id].millis, d.delay.millis);
        EXPECT_EQ(sim_delays[d.tx_id].blocks, d.delay.blocks) << d.tx_id;
    }
}

TEST(PrivateShare, AllPublicIsZero)
{
    const auto a = plain_tx("a", 1, 1, 0);
    const auto r = private_share({{block(100, {rec(a)}), block(101)}, {a}});
    ASSERT_EQ(r.daily.size(), 1u);
    EXPECT_EQ(r.daily[0].share(), Ratio(0));
}

TEST(PrivateShare, AbsentSenderDrivesTheShare)
{
    auto pub = plain_tx("p1", 1, 1, 0);
    pub.sender = "open";
    auto pub2 = plain_tx("p2", 1, 1, 0);
    pub2.sender = "open";
    BlockTxRecord hidden{"h1", "", "taiko", 1, 21'000, 1};
    BlockTxRecord hidden2{"h2", "", "taiko", 1, 21'000, 1};
    auto next_day = block(100, {hidden2});
    next_day.timestamp += 86'400;
    next_day.block_number = 7'300;
    const Trace trace{{block(100, {rec(pub), hidden}), block(101, {rec(pub2)}), next_day}, {pub, pub2}};
    const auto r = private_share(trace);
    ASSERT_EQ(r.daily.size(), 2u);
    EXPECT_EQ(r.daily[0].day, "2024-03-09");
    EXPECT_EQ(r.daily[0].share(), Ratio(1, 3));
    EXPECT_EQ(r.daily[1].share(), Ratio(1));
    ASSERT_EQ(r.by_sender.size(), 3u);
    EXPECT_EQ(r.by_sender[0].sender, "open");
    EXPECT_EQ(r.by_sender[0].private_txs, 0u);
    EXPECT_EQ(r.by_sender[1].sender, "taiko");
    EXPECT_EQ(r.by_sender[1].private_txs, 1u);

    const auto only = private_share(trace, std::string{"taiko"});
    for (const auto& d : only.daily)
        EXPECT_EQ(d.share(), Ratio(1));
}

TEST(PrivateShare, EmptyBlocksEmptySeries)
{
    const auto r = private_share({{}, {plain_tx("a", 1, 1, 0)}});
    EXPECT_TRUE(r.daily.empty());
    EXPECT_TRUE(r.by_sender.empty());
    std::ostringstream out;
    write_private_share_csv(out, r);
    EXPECT_EQ(out.str(), "day,private_txs,total_txs,private_share\n");
}

TEST(UtcDay, Formats)
{
    EXPECT_EQ(utc_day(0), "1970-01-01");
    EXPECT_EQ(utc_day(1'710'000'000), "2024-03-09");
    EXPECT_EQ(utc_day(1'710'028'799), "2024-03-09");
    EXPECT_EQ(utc_day(1'710'028'800), "2024-03-10");
}

}  // namespace
}  // namespace blobmarket
