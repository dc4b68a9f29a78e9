// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <blobmarket/fee_mechanism.hpp>
#include <blobmarket/ingest.hpp>
#include <blobmarket/packing.hpp>
#include <blobmarket/report.hpp>
#include <blobmarket/scenario.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace blobmarket {

struct RunOptions
{
    /// Pack every slot both greedily and optimally over the winning
    /// builder's candidate set. Only the configured strategy changes state.
    bool shadow_pricing = false;
};

struct SlotRecord
{
    std::uint64_t slot = 0;
    std::int64_t timestamp = 0;  // unix seconds
    std::string builder;
    PackingStrategy strategy = PackingStrategy::Optimal;
    bool blob_averse = false;
    Wei blob_base_fee;
    Wei base_fee_per_gas;
    BlobGas excess_blob_gas;
    std::uint64_t gas_used = 0;
    std::uint32_t blobs = 0;
    std::uint32_t txs = 0;
    /// Views the builder could afford to include this slot.
    std::uint32_t candidate_views = 0;
    /// Slot totals, computed from block aggregates rather than per tx.
    FeeBreakdown fees;
    /// Auditor verdict, computed after the run from public information.
    BlockClassification classification;
    std::optional<Wei> shadow_greedy_revenue;
    std::optional<Wei> shadow_optimal_revenue;
};

struct TxRecord
{
    std::string tx_id;
    std::string option_id;
    std::string sender;
    std::uint64_t slot = 0;
    std::uint32_t blobs = 0;
    std::uint64_t gas = 0;
    Wei priority_fee_per_gas;
    bool is_private = false;
    std::int64_t first_seen_ms = 0;
    InclusionDelay delay;
    FeeBreakdown fees;
};

struct CumulativeRecord
{
    std::uint64_t slot = 0;
    Wei blob_base_burned;
    Wei exec_base_burned;
    Wei builder_priority;
};

struct SenderMetrics
{
    std::string sender;
    std::uint64_t txs = 0;
    std::uint64_t blobs = 0;
    Wei priority_total;

    Ratio priority_per_tx() const;
    Ratio priority_per_blob() const;
};

struct RunMetrics
{
    std::vector<SlotRecord> slots;
    std::vector<TxRecord> txs;
    std::vector<CumulativeRecord> cumulative;
    std::vector<SenderMetrics> senders;  // sorted by name
    std::uint64_t arrivals = 0;
    std::uint64_t expired = 0;
    std::uint64_t pending_at_end = 0;
};

/// Fee states of blocks 1..H plus the inclusion ledger. `trace` holds the
/// blocks and the public mempool in the same form ingest reads them.
struct ChainState
{
    std::vector<BlockFeeState> blocks;
    Trace trace;
};

struct RunResult
{
    RunMetrics metrics;
    ChainState chain;
};

/// Simulates scenario.horizon_slots blocks. Deterministic for a fixed
/// scenario (seed included). Throws std::invalid_argument on an invalid
/// scenario, including one whose builder weights sum to zero.
RunResult run(const Scenario& scenario, const RunOptions& options = {});

Report summarize(const RunMetrics& metrics);

void write_slots_csv(std::ostream& out, const RunMetrics& metrics);
void write_tx_metrics_csv(std::ostream& out, const RunMetrics& metrics);
void write_cumulative_csv(std::ostream& out, const RunMetrics& metrics);
void write_senders_csv(std::ostream& out, const RunMetrics& metrics);
nlohmann::json summary_json(const Scenario& scenario, const RunOptions& options,
    const RunResult& result);

/// Writes slots.csv, transactions.csv, cumulative.csv, senders.csv,
/// summary.json and the replayable trace (blocks.csv, mempool.csv) into
/// `dir`, creating it when needed.
void write_run(const std::filesystem::path& dir, const Scenario& scenario,
    const RunOptions& options, const RunResult& result);

}  // namespace blobmarket
