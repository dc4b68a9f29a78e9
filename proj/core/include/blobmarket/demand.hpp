// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <blobmarket/scenario.hpp>
#include <blobmarket/transaction.hpp>

#include <boost/random/mersenne_twister.hpp>

#include <cstdint>
#include <string_view>
#include <vector>

namespace blobmarket {

/// Engine for one random source. Streams below 1,000,000 are regular
/// senders, 1,000,000 and up are spike senders; the harness uses 2^40.
boost::random::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream);

/// Seeded arrival stream for a scenario.
///
/// Every sender (and every ephemeral spike sender) draws from its own engine,
/// so the arrival times, blob counts, gas and base priority fees do not depend
/// on the fee signal passed to advance_to(); only reactive fee multipliers do.
class DemandStream
{
public:
    explicit DemandStream(const Scenario& scenario);

    /// Arrivals with first_seen <= until_ms, ordered by (first_seen, id).
    /// `blob_base_fee` drives congestion-reactive priority fees.
    std::vector<BlobTx> advance_to(std::int64_t until_ms, const Wei& blob_base_fee);

    /// Arrival rate multiplier at `t_ms` for regular senders.
    double rate_multiplier(double t_ms) const;

private:
    struct Source
    {
        SenderStrategy strategy;
        boost::random::mt19937_64 rng;
        double next_ms = 0;
        double active_from_ms = 0;
        double active_until_ms = 0;  // infinity for regular senders
        bool ephemeral = false;
        bool done = false;
        std::uint64_t seq = 0;
        std::size_t cycle_pos = 0;
    };

    void schedule_next(Source& src);
    BlobTx emit(Source& src, const Wei& blob_base_fee);

    Scenario scenario_;
    std::vector<Source> sources_;
    std::vector<double> boundaries_ms_;
};

/// Full arrival stream over the scenario horizon without fee feedback
/// (reactive senders see the minimum blob base fee).
std::vector<BlobTx> generate(const Scenario& scenario);

/// Built-in scenarios: "calm", "blobscriptions", "layerzero".
/// Throws std::invalid_argument for unknown names.
Scenario preset(std::string_view name);

std::vector<std::string_view> preset_names();

}  // namespace blobmarket
