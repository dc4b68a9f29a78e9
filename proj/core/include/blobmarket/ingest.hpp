// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <blobmarket/fee_mechanism.hpp>
#include <blobmarket/mempool.hpp>
#include <blobmarket/packing.hpp>
#include <blobmarket/report.hpp>
#include <blobmarket/transaction.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace blobmarket {

/// A blob transaction as recorded in a block.
struct BlockTxRecord
{
    std::string tx_id;
    std::string option_id;
    std::string sender;
    std::uint32_t num_blobs = 1;
    std::uint64_t gas_usage = 21'000;
    Wei priority_fee_per_gas;
};

struct BlockRecord
{
    std::uint64_t block_number = 0;
    std::int64_t timestamp = 0;  // unix seconds
    std::string builder;
    std::optional<bool> is_pbs;
    std::uint64_t gas_used = 0;
    std::uint64_t gas_limit = 30'000'000;
    Wei base_fee_per_gas;
    BlobGas excess_blob_gas;
    std::vector<BlockTxRecord> txs;
    /// Set when one of the block's rows failed to parse.
    bool malformed = false;

    std::uint32_t blob_count() const;
};

/// Block dump plus public mempool dump.
struct Trace
{
    std::vector<BlockRecord> blocks;
    std::vector<BlobTx> mempool;
};

// Blocks CSV, one row per included blob transaction; a block without blob
// transactions is a single row with empty tx columns:
//   block_number,timestamp,builder,is_pbs,gas_used,gas_limit,base_fee_per_gas_wei,
//   excess_blob_gas,tx_id,option_id,sender,num_blobs,gas_usage,priority_fee_per_gas_wei

struct BlocksCsv
{
    std::vector<BlockRecord> blocks;  // sorted by block number
    std::vector<CsvIssue> issues;
};

BlocksCsv read_blocks_csv(std::istream& in);
void write_blocks_csv(std::ostream& out, const std::vector<BlockRecord>& blocks);

/// The auditor's view of a transaction seen only in a block: a plain
/// private transaction carrying the recorded option.
BlobTx tx_from_block_record(const BlockTxRecord& rec);

struct TraceBlockRow
{
    std::uint64_t block_number = 0;
    bool malformed = false;
    BlockClassification classification;
};

struct TraceDelayRow
{
    std::string tx_id;
    std::uint64_t block_number = 0;
    InclusionDelay delay;
};

struct TraceClassification
{
    std::vector<TraceBlockRow> blocks;
    std::vector<TraceDelayRow> delays;
    /// Included transactions absent from the mempool dump.
    std::size_t unresolved_refs = 0;
    /// Inclusions timestamped before first sighting; skipped for delays.
    std::size_t clock_skew = 0;
    std::size_t malformed_blocks = 0;
};

/// Replays the block classification over a trace.
///
/// For block n the candidates are the mempool transactions inside the
/// eligibility window at n's expected time that were included at block >= n,
/// plus the block's own transactions. Expected time is the previous block's
/// timestamp plus one slot when the previous block is present, else the
/// block's own timestamp.
TraceClassification classify_trace(const Trace& trace, const EligibilityWindow& window,
    const ProtocolParams& params);

/// Expected block time (ms) for blocks[i] under the rule above.
std::int64_t expected_block_time_ms(const std::vector<BlockRecord>& blocks, std::size_t i,
    const ProtocolParams& params);

/// block_number,verdict,actual_revenue_wei,optimal_revenue_wei,greedy_revenue_wei,
/// relative_loss,blobs_actual,blobs_optimal
void write_classification_csv(std::ostream& out, const TraceClassification& result);
void write_delays_csv(std::ostream& out, const TraceClassification& result);

/// Summary over a trace classification (malformed blocks excluded).
Report summarize(const TraceClassification& result);

struct DailyShare
{
    std::string day;  // YYYY-MM-DD, UTC
    std::uint64_t private_txs = 0;
    std::uint64_t total_txs = 0;
    Ratio share() const { return total_txs ? Ratio{private_txs, total_txs} : Ratio{0}; }
};

struct SenderDailyShare
{
    std::string day;
    std::string sender;
    std::uint64_t private_txs = 0;
    std::uint64_t total_txs = 0;
};

struct PrivateShare
{
    std::vector<DailyShare> daily;
    std::vector<SenderDailyShare> by_sender;
};

/// A blob transaction is private iff its id is absent from the mempool dump.
/// `sender_filter`, when set, restricts counting to that sender.
PrivateShare private_share(const Trace& trace, const std::optional<std::string>& sender_filter = {});

void write_private_share_csv(std::ostream& out, const PrivateShare& share);
void write_private_share_by_sender_csv(std::ostream& out, const PrivateShare& share);

std::string utc_day(std::int64_t unix_seconds);

}  // namespace blobmarket
