// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/mempool.hpp>

#include <algorithm>

namespace blobmarket {

void EligibilityWindow::validate() const
{
    if (min_lead_ms <= 0 || min_lead_ms >= max_age_ms)
        throw std::invalid_argument{"eligibility window needs 0 < min_lead < max_age"};
}

void TimedPool::insert(BlobTx tx)
{
    if (entries_.contains(tx.id))
        throw PoolError{"duplicate transaction id '" + tx.id + "'"};
    by_first_seen_.emplace(tx.first_seen_ms, tx.id);
    std::string id = tx.id;
    entries_.emplace(std::move(id), std::move(tx));
}

std::vector<BlobTx> TimedPool::eligible_at(std::int64_t expected_block_time_ms,
    const EligibilityWindow& window, std::string_view builder_scope) const
{
    std::vector<BlobTx> out;
    auto lo = by_first_seen_.lower_bound(expected_block_time_ms - window.max_age_ms);
    auto hi = by_first_seen_.upper_bound(expected_block_time_ms - window.min_lead_ms);
    for (auto it = lo; it != hi; ++it)
    {
        const BlobTx& tx = entries_.at(it->second);
        if (tx.is_private && (builder_scope.empty() || tx.private_builder != builder_scope))
            continue;
        out.push_back(tx);
    }
    std::stable_sort(out.begin(), out.end(), [](const BlobTx& a, const BlobTx& b) {
        return a.first_seen_ms != b.first_seen_ms ? a.first_seen_ms < b.first_seen_ms : a.id < b.id;
    });
    return out;
}

void TimedPool::remove_included(std::span<const std::string> ids)
{
    for (const auto& id : ids)
    {
        if (!entries_.contains(id))
            throw PoolError{"unknown transaction id '" + id + "'"};
    }
    for (const auto& id : ids)
    {
        auto it = entries_.find(id);
        if (it == entries_.end())
            continue;  // repeated id in `ids`
        auto [lo, hi] = by_first_seen_.equal_range(it->second.first_seen_ms);
        for (auto j = lo; j != hi; ++j)
        {
            if (j->second == id)
            {
                by_first_seen_.erase(j);
                break;
            }
        }
        entries_.erase(it);
    }
}

const BlobTx* TimedPool::find(const std::string& id) const
{
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
}

std::size_t TimedPool::expire_before(std::int64_t cutoff_ms)
{
    std::size_t n = 0;
    auto end = by_first_seen_.lower_bound(cutoff_ms);
    for (auto it = by_first_seen_.begin(); it != end; ++it, ++n)
        entries_.erase(it->second);
    by_first_seen_.erase(by_first_seen_.begin(), end);
    return n;
}

}  // namespace blobmarket
