// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/demand.hpp>
#include <blobmarket/packing.hpp>

#include <benchmark/benchmark.h>

#include <boost/random/uniform_int_distribution.hpp>

#include <string>

namespace {

using blobmarket::PackingProblem;

// n candidates; every third transaction is a subset bid with 1..blobs options.
PackingProblem instance(std::size_t n, bool groups)
{
    using U = boost::random::uniform_int_distribution<std::uint64_t>;
    auto rng = blobmarket::make_engine(42, n);
    PackingProblem p;
    p.gas_budget = 20'000'000;
    for (std::size_t tx = 0; p.candidates.size() < n; ++tx)
    {
        const auto blobs = static_cast<std::uint32_t>(U{1, 6}(rng));
        const auto per_blob = U{1, 50}(rng) * 1'000'000'000;
        const auto gas = U{21'000, 300'000}(rng);
        const bool grouped = groups && blobs > 1 && tx % 3 == 0;
        for (std::uint32_t k = grouped ? 1 : blobs; k <= blobs && p.candidates.size() < n; ++k)
        {
            blobmarket::BuilderRevenueView v;
            v.tx_id = "t" + std::to_string(tx);
            v.option_id = grouped ? "b" + std::to_string(k) : std::string{};
            v.group_id = grouped ? v.tx_id : std::string{};
            v.blobs = k;
            v.gas = gas;
            v.revenue = blobmarket::Wei{per_blob * k};
            p.candidates.push_back(std::move(v));
        }
    }
    return p;
}

void BM_GreedyPack(benchmark::State& state)
{
    const auto p = instance(static_cast<std::size_t>(state.range(0)), false);
    for (auto _ : state)
        benchmark::DoNotOptimize(blobmarket::greedy_pack(p));
}
BENCHMARK(BM_GreedyPack)->Arg(8)->Arg(64)->Arg(512)->Arg(3000);

void BM_OptimalPack(benchmark::State& state)
{
    const auto p = instance(static_cast<std::size_t>(state.range(0)), false);
    for (auto _ : state)
        benchmark::DoNotOptimize(blobmarket::optimal_pack(p));
}
BENCHMARK(BM_OptimalPack)->Arg(8)->Arg(64)->Arg(512)->Arg(3000);

void BM_OptimalPackGroups(benchmark::State& state)
{
    const auto p = instance(static_cast<std::size_t>(state.range(0)), true);
    for (auto _ : state)
        benchmark::DoNotOptimize(blobmarket::optimal_pack(p));
}
BENCHMARK(BM_OptimalPackGroups)->Arg(8)->Arg(64)->Arg(512)->Arg(3000);

void BM_OptimalPackSubset(benchmark::State& state)
{
    const auto p = instance(static_cast<std::size_t>(state.range(0)), true);
    for (auto _ : state)
        benchmark::DoNotOptimize(blobmarket::optimal_pack_subset(p));
}
BENCHMARK(BM_OptimalPackSubset)->Arg(8)->Arg(64)->Arg(512)->Arg(3000);

}  // namespace
