// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/fee_mechanism.hpp>

#include <stdexcept>
#include <string>

namespace blobmarket {

void ProtocolParams::validate() const
{
    auto require_positive = [](std::uint64_t v, const char* name) {
        if (v == 0)
            throw std::invalid_argument{std::string{name} + " must be positive"};
    };
    require_positive(max_blobs_per_block, "max_blobs_per_block");
    require_positive(target_blobs_per_block, "target_blobs_per_block");
    require_positive(gas_per_blob, "gas_per_blob");
    require_positive(blob_fee_update_fraction, "blob_fee_update_fraction");
    require_positive(block_gas_limit, "block_gas_limit");
    require_positive(base_fee_max_change_denominator, "base_fee_max_change_denominator");
    require_positive(slot_seconds, "slot_seconds");
    if (min_blob_base_fee.is_zero())
        throw std::invalid_argument{"min_blob_base_fee must be positive"};
    if (target_blobs_per_block > max_blobs_per_block)
        throw std::invalid_argument{"target_blobs_per_block exceeds max_blobs_per_block"};
}

Wei fake_exponential(const Wei& factor, const BigInt& numerator, const BigInt& denominator)
{
    if (denominator.is_zero())
        throw std::invalid_argument{"fake_exponential: denominator must be non-zero"};
    if (numerator.sign() < 0 || denominator.sign() < 0)
        throw std::invalid_argument{"fake_exponential: arguments must be non-negative"};

    BigInt output = 0;
    BigInt accum = factor.value() * denominator;
    for (unsigned i = 1; !accum.is_zero(); ++i)
    {
        output += accum;
        accum = (accum * numerator) / (denominator * i);
    }
    return Wei{output / denominator};
}

Wei blob_base_fee(BlobGas excess_blob_gas, const ProtocolParams& params)
{
    return fake_exponential(
        params.min_blob_base_fee, excess_blob_gas.value, params.blob_fee_update_fraction);
}

BlobGas update_excess_blob_gas(
    BlobGas prev_excess, BlobGas blob_gas_used_prev_block, const ProtocolParams& params)
{
    if (blob_gas_used_prev_block.value > params.max_blob_gas_per_block())
        throw std::invalid_argument{"blob gas used exceeds the per-block maximum"};

    const std::uint64_t target = params.target_blob_gas_per_block();
    const std::uint64_t total = prev_excess.value + blob_gas_used_prev_block.value;
    return BlobGas{total > target ? total - target : 0};
}

Wei update_exec_base_fee(const Wei& prev_base_fee, std::uint64_t gas_used,
    std::uint64_t gas_target, const ProtocolParams& params)
{
    if (gas_target == 0)
        throw std::invalid_argument{"gas_target must be positive"};

    const std::uint64_t denom = params.base_fee_max_change_denominator;
    Wei next = prev_base_fee;
    if (gas_used > gas_target)
    {
        next += Wei{prev_base_fee.value() * (gas_used - gas_target) / gas_target / denom};
    }
    else if (gas_used < gas_target)
    {
        next -= Wei{prev_base_fee.value() * (gas_target - gas_used) / gas_target / denom};
    }
    return next.is_zero() ? Wei{1} : next;
}

ExecFee fee_1559(std::uint64_t gas_usage, const Wei& priority_fee_per_gas,
    const BlockFeeState& state)
{
    if (gas_usage < kMinTxGas)
        throw std::invalid_argument{"gas usage below the 21000 transaction minimum"};
    return {state.base_fee_per_gas * gas_usage, priority_fee_per_gas * gas_usage};
}

Wei fee_4844(std::uint64_t num_blobs, const BlockFeeState& state, const ProtocolParams& params)
{
    if (num_blobs < 1 || num_blobs > params.max_blobs_per_block)
        throw std::invalid_argument{"blob count outside 1..max_blobs_per_block"};
    return blob_base_fee(state.excess_blob_gas, params) * (num_blobs * params.gas_per_blob);
}

FeeBreakdown charge(std::uint64_t gas_usage, const Wei& priority_fee_per_gas,
    std::uint64_t num_blobs, const BlockFeeState& state, const ProtocolParams& params)
{
    auto exec = fee_1559(gas_usage, priority_fee_per_gas, state);
    return {std::move(exec.burned), std::move(exec.to_builder), fee_4844(num_blobs, state, params)};
}

}  // namespace blobmarket
