// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/report.hpp>

#include <algorithm>
#include <cmath>

namespace blobmarket {

using nlohmann::json;

std::uint64_t Report::count(Verdict v) const
{
    switch (v)
    {
    case Verdict::Optimal:
        return optimal;
    case Verdict::Suboptimal:
        return suboptimal;
    case Verdict::Unknown:
        return unknown;
    case Verdict::OutOfGas:
        return out_of_gas;
    case Verdict::NoBlobs:
        return no_blobs;
    }
    return 0;
}

std::optional<Ratio> Report::share(Verdict v) const
{
    if (v == Verdict::NoBlobs || blocks_with_blobs == 0)
        return std::nullopt;
    return Ratio{count(v), blocks_with_blobs};
}

namespace {

template <typename T>
T nearest_rank(const std::vector<T>& sorted, double p)
{
    const auto n = sorted.size();
    auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    return sorted[rank - 1];
}

json ratio_or_null(const std::optional<Ratio>& r)
{
    return r ? json(format_ratio(*r, 6)) : json(nullptr);
}

}  // namespace

Report summarize(std::span<const BlockClassification> blocks, std::span<const InclusionDelay> delays)
{
    Report r;
    r.blocks_total = blocks.size();
    Ratio loss_sum = 0;
    for (const auto& c : blocks)
    {
        switch (c.verdict)
        {
        case Verdict::Optimal:
            ++r.optimal;
            break;
        case Verdict::Suboptimal:
            ++r.suboptimal;
            if (c.relative_loss)
                loss_sum += *c.relative_loss;
            break;
        case Verdict::Unknown:
            ++r.unknown;
            break;
        case Verdict::OutOfGas:
            ++r.out_of_gas;
            break;
        case Verdict::NoBlobs:
            ++r.no_blobs;
            continue;
        }
        ++r.blocks_with_blobs;
        if (c.relative_loss && (!r.max_relative_loss || *c.relative_loss > *r.max_relative_loss))
            r.max_relative_loss = *c.relative_loss;
    }
    if (r.suboptimal > 0)
        r.mean_relative_loss_suboptimal = loss_sum / r.suboptimal;

    if (!delays.empty())
    {
        DelayStats d;
        d.count = delays.size();
        std::vector<std::int64_t> millis, blocks_waited;
        BigInt ms_sum = 0, block_sum = 0;
        for (const auto& x : delays)
        {
            millis.push_back(x.millis);
            blocks_waited.push_back(x.blocks);
            ms_sum += x.millis;
            block_sum += x.blocks;
        }
        std::sort(millis.begin(), millis.end());
        std::sort(blocks_waited.begin(), blocks_waited.end());
        d.mean_seconds = Ratio{ms_sum, BigInt{d.count} * 1000};
        d.mean_blocks = Ratio{block_sum, BigInt{d.count}};
        d.p50_seconds = static_cast<double>(nearest_rank(millis, 0.50)) / 1000.0;
        d.p90_seconds = static_cast<double>(nearest_rank(millis, 0.90)) / 1000.0;
        d.p99_seconds = static_cast<double>(nearest_rank(millis, 0.99)) / 1000.0;
        d.p50_blocks = nearest_rank(blocks_waited, 0.50);
        d.p90_blocks = nearest_rank(blocks_waited, 0.90);
        d.p99_blocks = nearest_rank(blocks_waited, 0.99);
        d.max_blocks = blocks_waited.back();
        r.delays = d;
    }
    return r;
}

json Report::to_json() const
{
    json shares = json::object();
    json counts = json::object();
    for (const auto v : {Verdict::Optimal, Verdict::Suboptimal, Verdict::Unknown, Verdict::OutOfGas})
    {
        shares[std::string{to_string(v)}] = ratio_or_null(share(v));
        counts[std::string{to_string(v)}] = count(v);
    }
    counts["NoBlobs"] = no_blobs;

    json j = {
        {"blocks_total", blocks_total},
        {"blocks_with_blobs", blocks_with_blobs},
        {"verdict_counts", counts},
        {"verdict_shares", shares},
        {"mean_relative_loss_suboptimal", ratio_or_null(mean_relative_loss_suboptimal)},
        {"max_relative_loss", ratio_or_null(max_relative_loss)},
    };
    if (delays)
    {
        j["delays"] = {
            {"count", delays->count},
            {"mean_seconds", format_ratio(delays->mean_seconds, 3)},
            {"mean_blocks", format_ratio(delays->mean_blocks, 3)},
            {"p50_seconds", delays->p50_seconds},
            {"p90_seconds", delays->p90_seconds},
            {"p99_seconds", delays->p99_seconds},
            {"p50_blocks", delays->p50_blocks},
            {"p90_blocks", delays->p90_blocks},
            {"p99_blocks", delays->p99_blocks},
            {"max_blocks", delays->max_blocks},
        };
    }
    else
    {
        j["delays"] = nullptr;
    }
    return j;
}

}  // namespace blobmarket
