// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <blobmarket/transaction.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace blobmarket {

/// A transaction counts as visible to the builder of a block expected at T
/// iff T - max_age <= first_seen <= T - min_lead. Both bounds are closed.
struct EligibilityWindow
{
    std::int64_t min_lead_ms = 4'000;
    std::int64_t max_age_ms = 120'000;

    void validate() const;
    bool contains(std::int64_t first_seen_ms, std::int64_t expected_block_time_ms) const
    {
        return first_seen_ms >= expected_block_time_ms - max_age_ms &&
               first_seen_ms <= expected_block_time_ms - min_lead_ms;
    }
};

class PoolError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Timed waiting area for blob transactions, indexed by id and first_seen.
///
/// Private transactions are only returned to the builder named in
/// BlobTx::private_builder.
class TimedPool
{
public:
    /// Throws PoolError on a duplicate id.
    void insert(BlobTx tx);

    /// Eligible transactions ordered by (first_seen, id).
    std::vector<BlobTx> eligible_at(std::int64_t expected_block_time_ms,
        const EligibilityWindow& window, std::string_view builder_scope = {}) const;

    /// Removes all ids or none; throws PoolError naming the first unknown id.
    void remove_included(std::span<const std::string> ids);

    bool contains(const std::string& id) const { return entries_.contains(id); }
    const BlobTx* find(const std::string& id) const;
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// Drops entries first seen before `cutoff_ms`; returns how many.
    std::size_t expire_before(std::int64_t cutoff_ms);

private:
    std::unordered_map<std::string, BlobTx> entries_;
    std::multimap<std::int64_t, std::string> by_first_seen_;
};

}  // namespace blobmarket
