// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <blobmarket/wei.hpp>

#include <cstdint>
#include <utility>

namespace blobmarket {

/// Minimum gas any transaction consumes.
inline constexpr std::uint64_t kMinTxGas = 21'000;

/// Protocol constants for both fee markets. Defaults are the Cancun mainnet
/// values: 6 blobs max, 3 target, 2^17 blob gas per blob.
struct ProtocolParams
{
    std::uint64_t max_blobs_per_block = 6;
    std::uint64_t target_blobs_per_block = 3;
    std::uint64_t gas_per_blob = 131'072;
    Wei min_blob_base_fee = 1;
    std::uint64_t blob_fee_update_fraction = 3'338'477;
    std::uint64_t block_gas_limit = 30'000'000;
    std::uint64_t base_fee_max_change_denominator = 8;
    std::uint64_t slot_seconds = 12;

    /// Throws std::invalid_argument if a parameter is zero or target > max.
    void validate() const;

    std::uint64_t max_blob_gas_per_block() const { return max_blobs_per_block * gas_per_blob; }
    std::uint64_t target_blob_gas_per_block() const { return target_blobs_per_block * gas_per_blob; }
    std::uint64_t gas_target() const { return block_gas_limit / 2; }

    friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

/// Fee state of block n. The blob base fee is derived from excess_blob_gas.
struct BlockFeeState
{
    std::uint64_t block_number = 0;
    std::int64_t timestamp = 0;  // unix seconds
    Wei base_fee_per_gas = 1;
    BlobGas excess_blob_gas;
    std::uint64_t gas_used = 0;
    BlobGas blob_gas_used;
};

struct FeeBreakdown
{
    Wei exec_base_burned;
    Wei exec_priority_to_builder;
    Wei blob_base_burned;

    Wei burned() const { return exec_base_burned + blob_base_burned; }
    Wei total() const { return exec_base_burned + exec_priority_to_builder + blob_base_burned; }

    FeeBreakdown& operator+=(const FeeBreakdown& o)
    {
        exec_base_burned += o.exec_base_burned;
        exec_priority_to_builder += o.exec_priority_to_builder;
        blob_base_burned += o.blob_base_burned;
        return *this;
    }
    friend bool operator==(const FeeBreakdown&, const FeeBreakdown&) = default;
};

/// Integer approximation of factor * e^(numerator / denominator) using the
/// Taylor accumulation loop from EIP-4844. Throws on denominator == 0.
Wei fake_exponential(const Wei& factor, const BigInt& numerator, const BigInt& denominator);

/// Blob base fee per unit of blob gas.
Wei blob_base_fee(BlobGas excess_blob_gas, const ProtocolParams& params);

/// Excess carried into the next block, clamped at zero.
BlobGas update_excess_blob_gas(BlobGas prev_excess, BlobGas blob_gas_used_prev_block,
    const ProtocolParams& params);

/// EIP-1559 update without the +1 minimum step; floored at 1 wei.
Wei update_exec_base_fee(const Wei& prev_base_fee, std::uint64_t gas_used,
    std::uint64_t gas_target, const ProtocolParams& params);

struct ExecFee
{
    Wei burned;
    Wei to_builder;
};

ExecFee fee_1559(std::uint64_t gas_usage, const Wei& priority_fee_per_gas,
    const BlockFeeState& state);

/// Blob fee for num_blobs blobs; burned in full.
Wei fee_4844(std::uint64_t num_blobs, const BlockFeeState& state, const ProtocolParams& params);

/// Both markets' charges for one transaction in block `state`.
FeeBreakdown charge(std::uint64_t gas_usage, const Wei& priority_fee_per_gas,
    std::uint64_t num_blobs, const BlockFeeState& state, const ProtocolParams& params);

}  // namespace blobmarket
