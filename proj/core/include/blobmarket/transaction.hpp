// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <blobmarket/wei.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace blobmarket {

inline constexpr std::uint32_t kMaxBlobsPerTx = 6;

/// One mutually exclusive choice inside a subset bid.
struct SubsetBidOption
{
    std::string option_id;
    std::uint32_t num_blobs = 1;
    std::uint64_t gas_usage = 21'000;
    Wei priority_fee_per_gas;

    friend bool operator==(const SubsetBidOption&, const SubsetBidOption&) = default;
};

/// A set of options of which a block may include at most one.
struct SubsetBidGroup
{
    std::vector<SubsetBidOption> options;

    /// Throws std::invalid_argument on fewer than two options, duplicate
    /// option ids, or options violating the per-transaction bounds.
    void validate() const;

    friend bool operator==(const SubsetBidGroup&, const SubsetBidGroup&) = default;
};

/// A type-3 (blob-carrying) transaction as seen by the mempool.
///
/// For a subset bid, num_blobs / gas_usage / priority_fee_per_gas mirror the
/// first option; packing always goes through expand_group().
struct BlobTx
{
    std::string id;
    std::string sender;
    std::uint32_t num_blobs = 1;
    std::uint64_t gas_usage = 21'000;
    Wei priority_fee_per_gas;
    Wei max_fee_per_gas;
    Wei max_fee_per_blob_gas;
    std::int64_t first_seen_ms = 0;
    bool is_private = false;
    /// Builder allowed to see a private transaction; empty means nobody.
    std::string private_builder;
    std::optional<SubsetBidGroup> subset_options;

    bool is_subset_bid() const { return subset_options.has_value(); }

    /// Option with the given id; the empty id names a plain transaction's
    /// single implicit option. Returns nullopt when no such option exists.
    std::optional<SubsetBidOption> option(const std::string& option_id) const;

    void validate() const;

    friend bool operator==(const BlobTx&, const BlobTx&) = default;
};

/// What a builder earns from including one transaction or option.
struct BuilderRevenueView
{
    std::string tx_id;
    std::string option_id;  // empty for plain transactions
    std::string group_id;   // the tx id for subset bids, empty otherwise
    std::uint32_t blobs = 0;
    std::uint64_t gas = 0;
    Wei revenue;

    /// Key under which views are mutually exclusive. Every transaction forms
    /// its own exclusion class, so a plain tx is a one-option group.
    const std::string& exclusion_key() const { return tx_id; }

    friend bool operator==(const BuilderRevenueView&, const BuilderRevenueView&) = default;
};

Wei revenue(const BlobTx& tx);
Wei revenue(const SubsetBidOption& option);

/// One view for a plain transaction, one per option for a subset bid.
std::vector<BuilderRevenueView> expand_group(const BlobTx& tx);

// Transaction CSV:
//   id,sender,num_blobs,gas_usage,priority_fee_per_gas_wei,max_fee_per_gas_wei,
//   max_fee_per_blob_gas_wei,first_seen_unix_ms,is_private,group_id,option_id
// Rows sharing an id with a non-empty group_id are the options of one subset bid.

struct CsvIssue
{
    std::size_t line = 0;
    std::string message;
};

struct TransactionCsv
{
    std::vector<BlobTx> transactions;  // file order of first appearance
    std::vector<CsvIssue> issues;
};

/// Parses the transaction CSV. Malformed rows are skipped and reported;
/// duplicate plain rows collapse to the earliest first_seen.
TransactionCsv read_transactions_csv(std::istream& in);

void write_transactions_csv(std::ostream& out, const std::vector<BlobTx>& txs);

}  // namespace blobmarket
