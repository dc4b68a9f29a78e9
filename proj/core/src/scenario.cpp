// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/scenario.hpp>

#include <cmath>
#include <set>
#include <stdexcept>

namespace blobmarket {

using nlohmann::json;

void SenderStrategy::validate() const
{
    const std::string who = "sender '" + sender + "'";
    if (sender.empty())
        throw std::invalid_argument{"sender label must not be empty"};
    if (!(submit_interval > 0) || !std::isfinite(submit_interval))
        throw std::invalid_argument{who + ": submit_interval must be positive"};

    auto check_blobs = [&](std::uint32_t b) {
        if (b < 1 || b > kMaxBlobsPerTx)
            throw std::invalid_argument{who + ": blob counts must be in 1..6"};
    };
    switch (blob_count_policy.kind)
    {
    case BlobCountPolicy::Kind::Fixed:
        check_blobs(blob_count_policy.blobs);
        break;
    case BlobCountPolicy::Kind::Cyclic:
        if (blob_count_policy.cycle.empty())
            throw std::invalid_argument{who + ": cyclic blob policy needs counts"};
        for (const auto b : blob_count_policy.cycle)
            check_blobs(b);
        break;
    case BlobCountPolicy::Kind::Uniform:
        check_blobs(blob_count_policy.min);
        check_blobs(blob_count_policy.max);
        if (blob_count_policy.min > blob_count_policy.max)
            throw std::invalid_argument{who + ": blob min exceeds max"};
        break;
    case BlobCountPolicy::Kind::Weighted:
    {
        const auto& w = blob_count_policy.weights;
        if (w.empty() || w.size() > kMaxBlobsPerTx)
            throw std::invalid_argument{who + ": weighted blob policy needs 1..6 weights"};
        double total = 0;
        for (const double x : w)
        {
            if (!(x >= 0))
                throw std::invalid_argument{who + ": negative blob weight"};
            total += x;
        }
        if (!(total > 0))
            throw std::invalid_argument{who + ": blob weights sum to zero"};
        break;
    }
    }

    if (gas_policy.kind == GasPolicy::Kind::Fixed && gas_policy.gas < kMinTxGas)
        throw std::invalid_argument{who + ": gas must be at least 21000"};
    if (gas_policy.kind == GasPolicy::Kind::Uniform &&
        (gas_policy.min < kMinTxGas || gas_policy.min > gas_policy.max))
        throw std::invalid_argument{who + ": gas range must satisfy 21000 <= min <= max"};

    if (priority_fee_policy.kind == PriorityFeePolicy::Kind::Uniform &&
        priority_fee_policy.min > priority_fee_policy.max)
        throw std::invalid_argument{who + ": priority fee min exceeds max"};
    if (priority_fee_policy.kind == PriorityFeePolicy::Kind::Reactive &&
        priority_fee_policy.multiplier == 0)
        throw std::invalid_argument{who + ": reactive multiplier must be positive"};
}

void SpikeEvent::validate() const
{
    if (!(duration > 0))
        throw std::invalid_argument{"spike duration must be positive"};
    if (!(start >= 0))
        throw std::invalid_argument{"spike start must be non-negative"};
    if (!(arrival_multiplier >= 1))
        throw std::invalid_argument{"spike arrival_multiplier must be at least 1"};
    if (!(ephemeral_submit_interval > 0))
        throw std::invalid_argument{"spike ephemeral_submit_interval must be positive"};
}

std::string_view to_string(PackingStrategy s)
{
    switch (s)
    {
    case PackingStrategy::Greedy:
        return "greedy";
    case PackingStrategy::Optimal:
        return "optimal";
    case PackingStrategy::SubsetOptimal:
        return "subset-optimal";
    }
    return "?";
}

PackingStrategy parse_packing_strategy(std::string_view name)
{
    if (name == "greedy")
        return PackingStrategy::Greedy;
    if (name == "optimal")
        return PackingStrategy::Optimal;
    if (name == "subset-optimal")
        return PackingStrategy::SubsetOptimal;
    throw std::invalid_argument{"unknown packing strategy '" + std::string{name} + "'"};
}

void Scenario::validate() const
{
    params.validate();
    window.validate();
    if (horizon_slots < 1)
        throw std::invalid_argument{"horizon_slots must be at least 1"};
    if (strategies.empty())
        throw std::invalid_argument{"scenario has no sender strategies"};
    std::set<std::string> senders;
    for (const auto& s : strategies)
    {
        s.validate();
        if (!senders.insert(s.sender).second)
            throw std::invalid_argument{"duplicate sender '" + s.sender + "'"};
    }
    for (const auto& spike : spikes)
        spike.validate();
    if (builders.empty())
        throw std::invalid_argument{"scenario has no builders"};
    double mass = 0;
    std::set<std::string> names;
    for (const auto& b : builders)
    {
        if (b.name.empty() || !names.insert(b.name).second)
            throw std::invalid_argument{"builder names must be unique and non-empty"};
        if (!(b.blob_aversion_probability >= 0 && b.blob_aversion_probability <= 1))
            throw std::invalid_argument{"builder '" + b.name + "': aversion must be in [0,1]"};
        if (!(b.selection_weight >= 0) || !std::isfinite(b.selection_weight))
            throw std::invalid_argument{"builder '" + b.name + "': weight must be non-negative"};
        mass += b.selection_weight;
    }
    if (!(mass > 0))
        throw std::invalid_argument{"builder selection weights sum to zero"};
    for (const auto& st : strategies)
    {
        if (st.privacy && !names.contains(st.private_builder))
            throw std::invalid_argument{
                "sender '" + st.sender + "': private_builder must name a configured builder"};
    }
    if (reserved_non_blob_gas > params.block_gas_limit)
        throw std::invalid_argument{"reserved_non_blob_gas exceeds block_gas_limit"};
}

namespace {

Wei wei_from_json(const json& j)
{
    if (j.is_string())
        return Wei::parse(j.get<std::string>());
    if (j.is_number_unsigned())
        return Wei{j.get<std::uint64_t>()};
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
        return Wei{static_cast<std::uint64_t>(j.get<std::int64_t>())};
    throw std::invalid_argument{"expected a non-negative integer wei amount, got " + j.dump()};
}

template <typename T>
void read(const json& j, const char* key, T& out)
{
    if (auto it = j.find(key); it != j.end())
        out = it->get<T>();
}

void read_wei(const json& j, const char* key, Wei& out)
{
    if (auto it = j.find(key); it != j.end())
        out = wei_from_json(*it);
}

BlobCountPolicy blob_policy_from_json(const json& j)
{
    BlobCountPolicy p;
    const auto kind = j.value("kind", std::string{"fixed"});
    if (kind == "fixed")
    {
        p.kind = BlobCountPolicy::Kind::Fixed;
        read(j, "blobs", p.blobs);
    }
    else if (kind == "cyclic")
    {
        p.kind = BlobCountPolicy::Kind::Cyclic;
        read(j, "counts", p.cycle);
    }
    else if (kind == "uniform")
    {
        p.kind = BlobCountPolicy::Kind::Uniform;
        read(j, "min", p.min);
        read(j, "max", p.max);
    }
    else if (kind == "weighted")
    {
        p.kind = BlobCountPolicy::Kind::Weighted;
        read(j, "weights", p.weights);
    }
    else
        throw std::invalid_argument{"unknown blob_count_policy kind '" + kind + "'"};
    return p;
}

json to_json(const BlobCountPolicy& p)
{
    switch (p.kind)
    {
    case BlobCountPolicy::Kind::Fixed:
        return {{"kind", "fixed"}, {"blobs", p.blobs}};
    case BlobCountPolicy::Kind::Cyclic:
        return {{"kind", "cyclic"}, {"counts", p.cycle}};
    case BlobCountPolicy::Kind::Uniform:
        return {{"kind", "uniform"}, {"min", p.min}, {"max", p.max}};
    case BlobCountPolicy::Kind::Weighted:
        return {{"kind", "weighted"}, {"weights", p.weights}};
    }
    return {};
}

GasPolicy gas_policy_from_json(const json& j)
{
    GasPolicy p;
    const auto kind = j.value("kind", std::string{"fixed"});
    if (kind == "fixed")
    {
        p.kind = GasPolicy::Kind::Fixed;
        read(j, "gas", p.gas);
    }
    else if (kind == "uniform")
    {
        p.kind = GasPolicy::Kind::Uniform;
        read(j, "min", p.min);
        read(j, "max", p.max);
    }
    else
        throw std::invalid_argument{"unknown gas_policy kind '" + kind + "'"};
    return p;
}

json to_json(const GasPolicy& p)
{
    if (p.kind == GasPolicy::Kind::Fixed)
        return {{"kind", "fixed"}, {"gas", p.gas}};
    return {{"kind", "uniform"}, {"min", p.min}, {"max", p.max}};
}

PriorityFeePolicy fee_policy_from_json(const json& j)
{
    PriorityFeePolicy p;
    const auto kind = j.value("kind", std::string{"fixed"});
    if (kind == "fixed")
        p.kind = PriorityFeePolicy::Kind::Fixed;
    else if (kind == "uniform")
        p.kind = PriorityFeePolicy::Kind::Uniform;
    else if (kind == "reactive")
        p.kind = PriorityFeePolicy::Kind::Reactive;
    else
        throw std::invalid_argument{"unknown priority_fee_policy kind '" + kind + "'"};
    read_wei(j, "wei", p.value);
    read_wei(j, "min_wei", p.min);
    read_wei(j, "max_wei", p.max);
    read_wei(j, "threshold_wei", p.threshold);
    read(j, "multiplier", p.multiplier);
    return p;
}

json to_json(const PriorityFeePolicy& p)
{
    switch (p.kind)
    {
    case PriorityFeePolicy::Kind::Fixed:
        return {{"kind", "fixed"}, {"wei", p.value.str()}};
    case PriorityFeePolicy::Kind::Uniform:
        return {{"kind", "uniform"}, {"min_wei", p.min.str()}, {"max_wei", p.max.str()}};
    case PriorityFeePolicy::Kind::Reactive:
        return {{"kind", "reactive"}, {"wei", p.value.str()}, {"threshold_wei", p.threshold.str()},
            {"multiplier", p.multiplier}};
    }
    return {};
}

}  // namespace

ProtocolParams protocol_params_from_json(const json& j)
{
    ProtocolParams p;
    read(j, "max_blobs_per_block", p.max_blobs_per_block);
    read(j, "target_blobs_per_block", p.target_blobs_per_block);
    read(j, "gas_per_blob", p.gas_per_blob);
    read_wei(j, "min_blob_base_fee", p.min_blob_base_fee);
    read(j, "blob_fee_update_fraction", p.blob_fee_update_fraction);
    read(j, "block_gas_limit", p.block_gas_limit);
    read(j, "base_fee_max_change_denominator", p.base_fee_max_change_denominator);
    read(j, "slot_seconds", p.slot_seconds);
    p.validate();
    return p;
}

json to_json(const ProtocolParams& p)
{
    return {
        {"max_blobs_per_block", p.max_blobs_per_block},
        {"target_blobs_per_block", p.target_blobs_per_block},
        {"gas_per_blob", p.gas_per_blob},
        {"min_blob_base_fee", p.min_blob_base_fee.str()},
        {"blob_fee_update_fraction", p.blob_fee_update_fraction},
        {"block_gas_limit", p.block_gas_limit},
        {"base_fee_max_change_denominator", p.base_fee_max_change_denominator},
        {"slot_seconds", p.slot_seconds},
    };
}

Scenario scenario_from_json(const json& j)
{
    Scenario s;
    read(j, "seed", s.seed);
    read(j, "horizon_slots", s.horizon_slots);
    if (auto it = j.find("params"); it != j.end())
        s.params = protocol_params_from_json(*it);
    read(j, "reserved_non_blob_gas", s.reserved_non_blob_gas);
    read(j, "genesis_timestamp", s.genesis_timestamp);
    read_wei(j, "initial_base_fee_per_gas", s.initial_base_fee_per_gas);
    read(j, "initial_excess_blob_gas", s.initial_excess_blob_gas.value);
    if (auto it = j.find("window"); it != j.end())
    {
        double min_lead = 4, max_age = 120;
        read(*it, "min_lead", min_lead);
        read(*it, "max_age", max_age);
        s.window.min_lead_ms = std::llround(min_lead * 1000);
        s.window.max_age_ms = std::llround(max_age * 1000);
    }

    for (const auto& js : j.value("strategies", json::array()))
    {
        SenderStrategy st;
        read(js, "sender", st.sender);
        if (auto it = js.find("blob_count_policy"); it != js.end())
            st.blob_count_policy = blob_policy_from_json(*it);
        if (auto it = js.find("gas_policy"); it != js.end())
            st.gas_policy = gas_policy_from_json(*it);
        if (auto it = js.find("priority_fee_policy"); it != js.end())
            st.priority_fee_policy = fee_policy_from_json(*it);
        read(js, "submit_interval", st.submit_interval);
        const auto arrival = js.value("arrival", std::string{"exponential"});
        if (arrival == "exponential")
            st.arrival = ArrivalLaw::Exponential;
        else if (arrival == "fixed")
            st.arrival = ArrivalLaw::Fixed;
        else
            throw std::invalid_argument{"unknown arrival law '" + arrival + "'"};
        read(js, "privacy", st.privacy);
        read(js, "private_builder", st.private_builder);
        read(js, "subset_bids", st.subset_bids);
        read_wei(js, "max_fee_per_gas", st.max_fee_per_gas);
        read_wei(js, "max_fee_per_blob_gas", st.max_fee_per_blob_gas);
        s.strategies.push_back(std::move(st));
    }

    for (const auto& jsp : j.value("spikes", json::array()))
    {
        SpikeEvent e;
        read(jsp, "start", e.start);
        read(jsp, "duration", e.duration);
        read(jsp, "arrival_multiplier", e.arrival_multiplier);
        read(jsp, "extra_senders", e.extra_senders);
        read(jsp, "ephemeral_submit_interval", e.ephemeral_submit_interval);
        read_wei(jsp, "ephemeral_priority_fee_per_gas", e.ephemeral_priority_fee_per_gas);
        read_wei(jsp, "ephemeral_max_fee_per_blob_gas", e.ephemeral_max_fee_per_blob_gas);
        s.spikes.push_back(e);
    }

    for (const auto& jb : j.value("builders", json::array()))
    {
        BuilderConfig b;
        read(jb, "name", b.name);
        if (auto it = jb.find("strategy"); it != jb.end())
            b.strategy = parse_packing_strategy(it->get<std::string>());
        read(jb, "blob_aversion_probability", b.blob_aversion_probability);
        read(jb, "selection_weight", b.selection_weight);
        s.builders.push_back(std::move(b));
    }

    s.validate();
    return s;
}

json to_json(const Scenario& s)
{
    json strategies = json::array();
    for (const auto& st : s.strategies)
    {
        strategies.push_back({
            {"sender", st.sender},
            {"blob_count_policy", to_json(st.blob_count_policy)},
            {"gas_policy", to_json(st.gas_policy)},
            {"priority_fee_policy", to_json(st.priority_fee_policy)},
            {"submit_interval", st.submit_interval},
            {"arrival", st.arrival == ArrivalLaw::Fixed ? "fixed" : "exponential"},
            {"privacy", st.privacy},
            {"private_builder", st.private_builder},
            {"subset_bids", st.subset_bids},
            {"max_fee_per_gas", st.max_fee_per_gas.str()},
            {"max_fee_per_blob_gas", st.max_fee_per_blob_gas.str()},
        });
    }
    json spikes = json::array();
    for (const auto& e : s.spikes)
    {
        spikes.push_back({
            {"start", e.start},
            {"duration", e.duration},
            {"arrival_multiplier", e.arrival_multiplier},
            {"extra_senders", e.extra_senders},
            {"ephemeral_submit_interval", e.ephemeral_submit_interval},
            {"ephemeral_priority_fee_per_gas", e.ephemeral_priority_fee_per_gas.str()},
            {"ephemeral_max_fee_per_blob_gas", e.ephemeral_max_fee_per_blob_gas.str()},
        });
    }
    json builders = json::array();
    for (const auto& b : s.builders)
    {
        builders.push_back({
            {"name", b.name},
            {"strategy", std::string{to_string(b.strategy)}},
            {"blob_aversion_probability", b.blob_aversion_probability},
            {"selection_weight", b.selection_weight},
        });
    }
    return {
        {"seed", s.seed},
        {"horizon_slots", s.horizon_slots},
        {"params", to_json(s.params)},
        {"reserved_non_blob_gas", s.reserved_non_blob_gas},
        {"genesis_timestamp", s.genesis_timestamp},
        {"initial_base_fee_per_gas", s.initial_base_fee_per_gas.str()},
        {"initial_excess_blob_gas", s.initial_excess_blob_gas.value},
        {"window", {{"min_lead", s.window.min_lead_ms / 1000.0}, {"max_age", s.window.max_age_ms / 1000.0}}},
        {"strategies", strategies},
        {"spikes", spikes},
        {"builders", builders},
    };
}

}  // namespace blobmarket
