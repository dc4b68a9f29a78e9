// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/demand.hpp>

#include <boost/random/discrete_distribution.hpp>
#include <boost/random/exponential_distribution.hpp>
#include <boost/random/seed_seq.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace blobmarket {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string numbered(const std::string& prefix, std::uint64_t n, int width)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*llu", width, static_cast<unsigned long long>(n));
    return prefix + buf;
}

Wei uniform_wei(boost::random::mt19937_64& rng, const Wei& lo, const Wei& hi)
{
    constexpr auto u64max = std::numeric_limits<std::uint64_t>::max();
    if (hi.value() > u64max)
        throw std::invalid_argument{"uniform priority fee bounds must fit in 64 bits"};
    boost::random::uniform_int_distribution<std::uint64_t> d{
        lo.value().convert_to<std::uint64_t>(), hi.value().convert_to<std::uint64_t>()};
    return Wei{d(rng)};
}

}  // namespace

boost::random::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream)
{
    boost::random::seed_seq seq{static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32), 0x4844u};
    return boost::random::mt19937_64{seq};
}

DemandStream::DemandStream(const Scenario& scenario) : scenario_{scenario}
{
    scenario_.validate();
    const double genesis = static_cast<double>(scenario_.genesis_ms());

    for (const auto& spike : scenario_.spikes)
    {
        boundaries_ms_.push_back(genesis + spike.start * 1000.0);
        boundaries_ms_.push_back(genesis + spike.end() * 1000.0);
    }
    std::sort(boundaries_ms_.begin(), boundaries_ms_.end());

    std::uint64_t stream = 0;
    for (const auto& st : scenario_.strategies)
    {
        Source src{st, make_engine(scenario_.seed, stream++)};
        src.next_ms = genesis;
        src.active_from_ms = genesis;
        src.active_until_ms = kInfinity;
        sources_.push_back(std::move(src));
    }
    for (std::size_t k = 0; k < scenario_.spikes.size(); ++k)
    {
        const auto& spike = scenario_.spikes[k];
        for (std::uint32_t e = 0; e < spike.extra_senders; ++e)
        {
            SenderStrategy st;
            st.sender = numbered("spike" + std::to_string(k) + "-eph", e, 3);
            st.blob_count_policy.blobs = 1;
            st.gas_policy.gas = kMinTxGas;
            st.priority_fee_policy.value = spike.ephemeral_priority_fee_per_gas;
            st.submit_interval = spike.ephemeral_submit_interval;
            st.max_fee_per_gas = std::max(st.max_fee_per_gas, spike.ephemeral_priority_fee_per_gas);
            st.max_fee_per_blob_gas = spike.ephemeral_max_fee_per_blob_gas;
            Source src{std::move(st), make_engine(scenario_.seed, 1'000'000 + k * 10'000 + e)};
            src.ephemeral = true;
            src.active_from_ms = genesis + spike.start * 1000.0;
            src.active_until_ms = genesis + spike.end() * 1000.0;
            src.next_ms = src.active_from_ms;
            sources_.push_back(std::move(src));
        }
    }
    for (auto& src : sources_)
        schedule_next(src);
}

double DemandStream::rate_multiplier(double t_ms) const
{
    const double genesis = static_cast<double>(scenario_.genesis_ms());
    double m = 1.0;
    for (const auto& spike : scenario_.spikes)
    {
        const double start = genesis + spike.start * 1000.0;
        const double end = genesis + spike.end() * 1000.0;
        if (t_ms >= start && t_ms < end)
            m *= spike.arrival_multiplier;
    }
    return m;
}

void DemandStream::schedule_next(Source& src)
{
    const double interval_ms = src.strategy.submit_interval * 1000.0;
    double work = 1.0;
    if (src.strategy.arrival == ArrivalLaw::Exponential)
        work = boost::random::exponential_distribution<double>{1.0}(src.rng);

    if (src.ephemeral)
    {
        src.next_ms += work * interval_ms;
        if (src.next_ms > src.active_until_ms)
            src.done = true;
        return;
    }

    // Time-rescaled Poisson process over a piecewise-constant rate.
    double t = src.next_ms;
    for (;;)
    {
        const double rate = rate_multiplier(t) / interval_ms;
        const auto it = std::upper_bound(boundaries_ms_.begin(), boundaries_ms_.end(), t);
        const double boundary = it == boundaries_ms_.end() ? kInfinity : *it;
        const double capacity = (boundary - t) * rate;
        if (work <= capacity)
        {
            t += work / rate;
            break;
        }
        work -= capacity;
        t = boundary;
    }
    src.next_ms = t;
}

BlobTx DemandStream::emit(Source& src, const Wei& blob_base_fee)
{
    const auto& st = src.strategy;
    auto& rng = src.rng;

    std::uint32_t blobs = 1;
    switch (st.blob_count_policy.kind)
    {
    case BlobCountPolicy::Kind::Fixed:
        blobs = st.blob_count_policy.blobs;
        break;
    case BlobCountPolicy::Kind::Cyclic:
        blobs = st.blob_count_policy.cycle[src.cycle_pos++ % st.blob_count_policy.cycle.size()];
        break;
    case BlobCountPolicy::Kind::Uniform:
        blobs = boost::random::uniform_int_distribution<std::uint32_t>{
            st.blob_count_policy.min, st.blob_count_policy.max}(rng);
        break;
    case BlobCountPolicy::Kind::Weighted:
        blobs = 1 + static_cast<std::uint32_t>(boost::random::discrete_distribution<std::uint32_t>{
                        st.blob_count_policy.weights.begin(), st.blob_count_policy.weights.end()}(rng));
        break;
    }

    std::uint64_t gas = st.gas_policy.gas;
    if (st.gas_policy.kind == GasPolicy::Kind::Uniform)
        gas = boost::random::uniform_int_distribution<std::uint64_t>{
            st.gas_policy.min, st.gas_policy.max}(rng);

    Wei prio = st.priority_fee_policy.value;
    switch (st.priority_fee_policy.kind)
    {
    case PriorityFeePolicy::Kind::Fixed:
        break;
    case PriorityFeePolicy::Kind::Uniform:
        prio = uniform_wei(rng, st.priority_fee_policy.min, st.priority_fee_policy.max);
        break;
    case PriorityFeePolicy::Kind::Reactive:
        if (blob_base_fee > st.priority_fee_policy.threshold)
            prio *= st.priority_fee_policy.multiplier;
        break;
    }
    prio = std::min(prio, st.max_fee_per_gas);

    BlobTx tx;
    tx.id = numbered(st.sender + "-", src.seq++, 6);
    tx.sender = st.sender;
    tx.num_blobs = blobs;
    tx.gas_usage = gas;
    tx.priority_fee_per_gas = prio;
    tx.max_fee_per_gas = st.max_fee_per_gas;
    tx.max_fee_per_blob_gas = st.max_fee_per_blob_gas;
    tx.first_seen_ms = static_cast<std::int64_t>(std::floor(src.next_ms));
    tx.is_private = st.privacy;
    tx.private_builder = st.privacy ? st.private_builder : std::string{};

    if (st.subset_bids && blobs >= 2)
    {
        SubsetBidGroup group;
        for (std::uint32_t k = 1; k <= blobs; ++k)
            group.options.push_back({"b" + std::to_string(k), k, gas, prio * k / blobs});
        tx.num_blobs = group.options.front().num_blobs;
        tx.priority_fee_per_gas = group.options.front().priority_fee_per_gas;
        tx.subset_options = std::move(group);
    }
    return tx;
}

std::vector<BlobTx> DemandStream::advance_to(std::int64_t until_ms, const Wei& blob_base_fee)
{
    std::vector<BlobTx> out;
    const double limit = static_cast<double>(until_ms) + 1.0;  // first_seen = floor(next)
    for (;;)
    {
        Source* best = nullptr;
        for (auto& src : sources_)
        {
            if (src.done || src.next_ms >= limit)
                continue;
            if (!best || src.next_ms < best->next_ms)
                best = &src;
        }
        if (!best)
            break;
        out.push_back(emit(*best, blob_base_fee));
        schedule_next(*best);
    }
    std::stable_sort(out.begin(), out.end(), [](const BlobTx& a, const BlobTx& b) {
        return a.first_seen_ms != b.first_seen_ms ? a.first_seen_ms < b.first_seen_ms : a.id < b.id;
    });
    return out;
}

std::vector<BlobTx> generate(const Scenario& scenario)
{
    DemandStream stream{scenario};
    return stream.advance_to(
        scenario.slot_time_ms(scenario.horizon_slots), scenario.params.min_blob_base_fee);
}

namespace {

SenderStrategy l2(std::string name, BlobCountPolicy blobs, GasPolicy gas, PriorityFeePolicy fee,
    double interval)
{
    SenderStrategy s;
    s.sender = std::move(name);
    s.blob_count_policy = std::move(blobs);
    s.gas_policy = gas;
    s.priority_fee_policy = std::move(fee);
    s.submit_interval = interval;
    return s;
}

BlobCountPolicy fixed_blobs(std::uint32_t n)
{
    return {BlobCountPolicy::Kind::Fixed, n, {}, 1, 6, {}};
}

PriorityFeePolicy fixed_fee(Wei w)
{
    PriorityFeePolicy p;
    p.value = std::move(w);
    return p;
}

PriorityFeePolicy uniform_fee(Wei lo, Wei hi)
{
    PriorityFeePolicy p;
    p.kind = PriorityFeePolicy::Kind::Uniform;
    p.min = std::move(lo);
    p.max = std::move(hi);
    return p;
}

GasPolicy fixed_gas(std::uint64_t g)
{
    return {GasPolicy::Kind::Fixed, g, g, g};
}

// Roughly two blobs per slot of steady rollup demand with a mix of fixed
// single-blob posters and variable multi-blob posters.
Scenario base_market()
{
    Scenario s;
    s.seed = 4844;
    s.strategies = {
        l2("base", {BlobCountPolicy::Kind::Weighted, 1, {}, 1, 6, {0, 0, 1, 1, 2, 4}},
            {GasPolicy::Kind::Uniform, 21'000, 21'000, 60'000},
            uniform_fee(Wei::gwei(1) / 2, Wei::gwei(3)), 120),
        l2("arbitrum", {BlobCountPolicy::Kind::Uniform, 1, {}, 1, 6, {}}, fixed_gas(21'000),
            fixed_fee(Wei::gwei(1)), 120),
        l2("optimism", {BlobCountPolicy::Kind::Cyclic, 1, {5, 3, 6}, 1, 6, {}}, fixed_gas(21'000),
            fixed_fee(Wei::gwei(3) / 2), 180),
        l2("taiko", fixed_blobs(1), fixed_gas(200'000),
            uniform_fee(Wei::gwei(1) / 10, Wei::gwei(1) / 2), 36),
        l2("scroll", fixed_blobs(1), fixed_gas(21'000), fixed_fee(Wei::gwei(1) / 20), 60),
        l2("linea", fixed_blobs(6), fixed_gas(21'000), fixed_fee(Wei::gwei(2)), 360),
        l2("zksync", {BlobCountPolicy::Kind::Cyclic, 1, {2, 2, 4}, 1, 6, {}}, fixed_gas(21'000),
            uniform_fee(Wei::gwei(1) / 4, Wei::gwei(2)), 240),
    };
    // Taiko routes its blobs privately to one builder.
    s.strategies[3].privacy = true;
    s.strategies[3].private_builder = "builder-optimal";
    s.builders = {
        {"builder-optimal", PackingStrategy::Optimal, 0.01, 0.45},
        {"builder-greedy", PackingStrategy::Greedy, 0.01, 0.45},
        {"builder-lazy", PackingStrategy::Greedy, 0.30, 0.10},
    };
    return s;
}

}  // namespace

Scenario preset(std::string_view name)
{
    Scenario s = base_market();
    if (name == "calm")
    {
        s.horizon_slots = 7'200;  // one day
    }
    else if (name == "blobscriptions")
    {
        s.horizon_slots = 1'500;
        SpikeEvent spike;
        spike.start = 3'600;
        spike.duration = 7'200;
        spike.arrival_multiplier = 1.5;
        spike.extra_senders = 48;
        spike.ephemeral_submit_interval = 60;
        spike.ephemeral_priority_fee_per_gas = Wei::gwei(3);
        spike.ephemeral_max_fee_per_blob_gas = Wei{100} * 1'000'000'000u;
        s.spikes.push_back(spike);
    }
    else if (name == "layerzero")
    {
        s.horizon_slots = 3'600;  // twelve hours
        const Wei l2_cap = Wei{5} * 1'000'000'000'000'000u;
        for (auto& st : s.strategies)
        {
            auto& fee = st.priority_fee_policy;
            if (fee.kind == PriorityFeePolicy::Kind::Uniform)
                fee.value = (fee.min + fee.max) / 2;
            fee.kind = PriorityFeePolicy::Kind::Reactive;
            fee.threshold = Wei::gwei(1);
            fee.multiplier = 10;
            st.max_fee_per_blob_gas = l2_cap;
        }
        SpikeEvent spike;
        spike.start = 1'800;
        spike.duration = 7 * 3'600;
        spike.arrival_multiplier = 3;
        spike.extra_senders = 24;
        spike.ephemeral_submit_interval = 60;
        spike.ephemeral_priority_fee_per_gas = Wei::gwei(2);
        spike.ephemeral_max_fee_per_blob_gas = Wei{2} * 1'000'000'000'000'000u;
        s.spikes.push_back(spike);
    }
    else
    {
        throw std::invalid_argument{"unknown preset '" + std::string{name} + "'"};
    }
    s.validate();
    return s;
}

std::vector<std::string_view> preset_names()
{
    return {"calm", "blobscriptions", "layerzero"};
}

}  // namespace blobmarket
