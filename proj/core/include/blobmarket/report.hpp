// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <blobmarket/packing.hpp>
#include <blobmarket/wei.hpp>

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <span>

namespace blobmarket {

struct DelayStats
{
    std::uint64_t count = 0;
    Ratio mean_seconds;
    Ratio mean_blocks;
    // Nearest-rank percentiles.
    double p50_seconds = 0, p90_seconds = 0, p99_seconds = 0;
    std::int64_t p50_blocks = 0, p90_blocks = 0, p99_blocks = 0;
    std::int64_t max_blocks = 0;
};

/// Aggregates over classified blocks.
///
/// Shares are over blocks carrying blobs (NoBlobs excluded). The mean
/// relative loss covers Suboptimal blocks only and is absent when there are
/// none.
struct Report
{
    std::uint64_t blocks_total = 0;
    std::uint64_t blocks_with_blobs = 0;
    std::uint64_t optimal = 0, suboptimal = 0, unknown = 0, out_of_gas = 0, no_blobs = 0;
    std::optional<Ratio> mean_relative_loss_suboptimal;
    std::optional<Ratio> max_relative_loss;
    std::optional<DelayStats> delays;

    std::optional<Ratio> share(Verdict v) const;
    std::uint64_t count(Verdict v) const;

    nlohmann::json to_json() const;
};

Report summarize(std::span<const BlockClassification> blocks, std::span<const InclusionDelay> delays);

}  // namespace blobmarket
