// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <blobmarket/transaction.hpp>
#include <blobmarket/wei.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blobmarket {

inline constexpr std::uint32_t kMaxPackingCapacity = 64;

struct PackingProblem
{
    std::vector<BuilderRevenueView> candidates;
    std::uint32_t blob_capacity = 6;
    /// Gas left in the block for blob transactions; nullopt means unlimited.
    std::optional<std::uint64_t> gas_budget;

    /// Throws std::invalid_argument on out-of-range blob counts, capacity
    /// above kMaxPackingCapacity or duplicate (tx_id, option_id) pairs.
    void validate() const;
};

struct PackingResult
{
    std::vector<BuilderRevenueView> chosen;
    std::uint32_t total_blobs = 0;
    std::uint64_t total_gas = 0;
    Wei total_revenue;

    bool includes(std::string_view tx_id) const;
};

/// Candidate order used by every packer: revenue desc, then fewer blobs,
/// less gas, tx id, option id.
bool packs_before(const BuilderRevenueView& a, const BuilderRevenueView& b);

/// Takes candidates in packs_before() order while they fit.
PackingResult greedy_pack(const PackingProblem& problem);

/// Revenue-maximizing selection: dominance pruning followed by
/// branch-and-bound. Honors group exclusion when present.
PackingResult optimal_pack(const PackingProblem& problem);

/// Revenue-maximizing selection with at most one option per group, solved as
/// a multiple-choice knapsack over blob capacity with Pareto (gas, revenue)
/// labels. Independent of optimal_pack's search.
PackingResult optimal_pack_subset(const PackingProblem& problem);

/// Capacity, gas budget, exclusion and total consistency.
bool is_feasible(const PackingProblem& problem, const PackingResult& result);

enum class Verdict
{
    Optimal,
    Suboptimal,
    Unknown,
    OutOfGas,
    NoBlobs,
};

std::string_view to_string(Verdict v);
/// Throws std::invalid_argument for unrecognized names.
Verdict parse_verdict(std::string_view name);

/// A transaction as it appeared in a block; option_id names the chosen
/// subset option (empty for plain transactions).
struct IncludedTx
{
    BlobTx tx;
    std::string option_id;
};

struct BlockClassification
{
    Verdict verdict = Verdict::NoBlobs;
    Wei actual_revenue;
    Wei optimal_revenue;
    Wei greedy_revenue;
    std::optional<Ratio> relative_loss;
    std::uint32_t blobs_actual = 0;
    std::uint32_t blobs_optimal = 0;
};

/// Four-way verdict for one block.
///
/// Candidates are `eligible` plus everything in `actual` (deduplicated by
/// id, actual wins). The optimum is computed without a gas budget; the block
/// is OutOfGas when that optimum would not fit next to the non-blob gas.
BlockClassification classify_block(std::span<const IncludedTx> actual,
    std::span<const BlobTx> eligible, std::uint64_t block_gas_limit,
    std::uint64_t non_blob_gas_used, std::uint32_t blob_capacity = 6);

/// (optimal - actual) / optimal; nullopt when optimal is zero.
/// Throws std::invalid_argument when actual exceeds optimal.
std::optional<Ratio> relative_fee_loss(const Wei& actual_revenue, const Wei& optimal_revenue);

struct InclusionDelay
{
    std::int64_t millis = 0;
    std::int64_t blocks = 0;

    double seconds() const { return static_cast<double>(millis) / 1000.0; }
};

/// Wait from first sighting to inclusion, in time and in blocks past the
/// first block whose eligibility window contained the transaction.
InclusionDelay inclusion_delay(const BlobTx& tx, std::int64_t inclusion_time_ms,
    std::uint64_t inclusion_block, std::uint64_t first_possible_block);

}  // namespace blobmarket
