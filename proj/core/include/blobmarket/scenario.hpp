// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <blobmarket/fee_mechanism.hpp>
#include <blobmarket/mempool.hpp>
#include <blobmarket/wei.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blobmarket {

struct BlobCountPolicy
{
    enum class Kind
    {
        Fixed,
        Cyclic,
        Uniform,
        Weighted,
    };
    Kind kind = Kind::Fixed;
    std::uint32_t blobs = 1;            // Fixed
    std::vector<std::uint32_t> cycle;   // Cyclic
    std::uint32_t min = 1, max = 6;     // Uniform, inclusive
    std::vector<double> weights;        // Weighted, weights[k] for k+1 blobs
};

struct GasPolicy
{
    enum class Kind
    {
        Fixed,
        Uniform,
    };
    Kind kind = Kind::Fixed;
    std::uint64_t gas = 21'000;
    std::uint64_t min = 21'000, max = 21'000;
};

/// Per-gas priority fee. Reactive multiplies `value` by `multiplier` while
/// the blob base fee is above `threshold`.
struct PriorityFeePolicy
{
    enum class Kind
    {
        Fixed,
        Uniform,
        Reactive,
    };
    Kind kind = Kind::Fixed;
    Wei value = Wei::gwei(1);
    Wei min, max;
    Wei threshold;
    std::uint64_t multiplier = 1;
};

enum class ArrivalLaw
{
    Exponential,
    Fixed,
};

struct SenderStrategy
{
    std::string sender;
    BlobCountPolicy blob_count_policy;
    GasPolicy gas_policy;
    PriorityFeePolicy priority_fee_policy;
    double submit_interval = 60.0;  // seconds, mean inter-arrival
    ArrivalLaw arrival = ArrivalLaw::Exponential;
    bool privacy = false;
    std::string private_builder;
    /// Emit each multi-blob tx as a subset bid with options 1..n blobs at the
    /// same per-blob price.
    bool subset_bids = false;
    Wei max_fee_per_gas = Wei::gwei(1'000);
    Wei max_fee_per_blob_gas = Wei{BigInt{"1000000000000000000"}};

    void validate() const;
};

struct SpikeEvent
{
    double start = 0;     // seconds after genesis
    double duration = 0;  // seconds
    double arrival_multiplier = 1;
    std::uint32_t extra_senders = 0;
    double ephemeral_submit_interval = 60.0;
    Wei ephemeral_priority_fee_per_gas = Wei::gwei(2);
    Wei ephemeral_max_fee_per_blob_gas = Wei{BigInt{"1000000000000000000"}};

    void validate() const;
    double end() const { return start + duration; }
};

enum class PackingStrategy
{
    Greedy,
    Optimal,
    SubsetOptimal,
};

std::string_view to_string(PackingStrategy s);
PackingStrategy parse_packing_strategy(std::string_view name);

struct BuilderConfig
{
    std::string name;
    PackingStrategy strategy = PackingStrategy::Optimal;
    double blob_aversion_probability = 0.0;
    double selection_weight = 1.0;
};

struct Scenario
{
    std::uint64_t seed = 1;
    std::uint64_t horizon_slots = 100;
    std::vector<SenderStrategy> strategies;
    std::vector<SpikeEvent> spikes;
    ProtocolParams params;
    std::vector<BuilderConfig> builders;
    EligibilityWindow window;
    std::uint64_t reserved_non_blob_gas = 10'000'000;
    std::int64_t genesis_timestamp = 1'710'000'000;  // unix seconds
    Wei initial_base_fee_per_gas = Wei::gwei(10);
    BlobGas initial_excess_blob_gas;

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;

    std::int64_t genesis_ms() const { return genesis_timestamp * 1000; }
    std::int64_t slot_ms() const { return static_cast<std::int64_t>(params.slot_seconds) * 1000; }
    /// Timestamp (ms) of block `slot`, slot 1 being the first simulated block.
    std::int64_t slot_time_ms(std::uint64_t slot) const
    {
        return genesis_ms() + static_cast<std::int64_t>(slot) * slot_ms();
    }
};

// JSON I/O. Absent fields take defaults; Wei values accept numbers or
// decimal strings.
ProtocolParams protocol_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProtocolParams& p);
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Scenario& s);

}  // namespace blobmarket
