// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/csv.hpp>
#include <blobmarket/demand.hpp>
#include <blobmarket/mempool.hpp>
#include <blobmarket/simulator.hpp>

#include <boost/random/discrete_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <fstream>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace blobmarket {

Ratio SenderMetrics::priority_per_tx() const
{
    return txs ? Ratio{priority_total.value(), BigInt{txs}} : Ratio{0};
}

Ratio SenderMetrics::priority_per_blob() const
{
    return blobs ? Ratio{priority_total.value(), BigInt{blobs}} : Ratio{0};
}

namespace {

constexpr std::uint64_t kHarnessStream = std::uint64_t{1} << 40;

Wei priority_of(const BlobTx& tx, const std::string& option_id)
{
    const auto opt = tx.option(option_id);
    if (!opt)
        throw std::logic_error{"unknown option '" + option_id + "' on " + tx.id};
    return opt->priority_fee_per_gas;
}

/// Views the builder may include at the current fee state.
std::vector<BuilderRevenueView> affordable_views(const std::vector<BlobTx>& eligible,
    const Wei& base_fee, const Wei& blob_fee)
{
    std::vector<BuilderRevenueView> out;
    for (const auto& tx : eligible)
    {
        if (tx.max_fee_per_blob_gas < blob_fee)
            continue;
        for (auto& v : expand_group(tx))
        {
            Wei need = base_fee;
            need += priority_of(tx, v.option_id);
            if (need <= tx.max_fee_per_gas)
                out.push_back(std::move(v));
        }
    }
    return out;
}

PackingResult pack(PackingStrategy s, const PackingProblem& problem)
{
    switch (s)
    {
    case PackingStrategy::Greedy:
        return greedy_pack(problem);
    case PackingStrategy::Optimal:
        return optimal_pack(problem);
    case PackingStrategy::SubsetOptimal:
        return optimal_pack_subset(problem);
    }
    throw std::logic_error{"unhandled packing strategy"};
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b)
{
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace

RunResult run(const Scenario& scenario, const RunOptions& options)
{
    scenario.validate();
    const auto& params = scenario.params;
    const auto capacity = static_cast<std::uint32_t>(params.max_blobs_per_block);
    const std::uint64_t budget = params.block_gas_limit - scenario.reserved_non_blob_gas;

    RunResult result;
    auto& metrics = result.metrics;
    auto& chain = result.chain;

    DemandStream demand{scenario};
    TimedPool pool;
    auto rng = make_engine(scenario.seed, kHarnessStream);
    std::vector<double> weights;
    for (const auto& b : scenario.builders)
        weights.push_back(b.selection_weight);
    boost::random::discrete_distribution<std::size_t, double> pick_builder{
        weights.begin(), weights.end()};
    boost::random::uniform_real_distribution<double> unit{0.0, 1.0};

    std::unordered_map<std::string, BlobTx> known;
    std::unordered_map<std::string, std::uint64_t> included_at;
    std::vector<std::vector<std::string>> public_window(scenario.horizon_slots + 1);

    BlockFeeState state;
    state.base_fee_per_gas = scenario.initial_base_fee_per_gas;
    state.excess_blob_gas = scenario.initial_excess_blob_gas;
    CumulativeRecord running;

    for (std::uint64_t n = 1; n <= scenario.horizon_slots; ++n)
    {
        const std::int64_t t_ms = scenario.slot_time_ms(n);
        state.block_number = n;
        state.timestamp = t_ms / 1000;
        const Wei blob_fee = blob_base_fee(state.excess_blob_gas, params);

        for (auto& tx : demand.advance_to(t_ms, blob_fee))
        {
            ++metrics.arrivals;
            if (!tx.is_private)
                chain.trace.mempool.push_back(tx);
            known.emplace(tx.id, tx);
            pool.insert(std::move(tx));
        }

        const auto& builder = scenario.builders[pick_builder(rng)];
        const bool averse = unit(rng) < builder.blob_aversion_probability;

        for (const auto& tx : pool.eligible_at(t_ms, scenario.window))
            public_window[n].push_back(tx.id);

        PackingProblem problem;
        problem.blob_capacity = capacity;
        problem.gas_budget = budget;
        problem.candidates = affordable_views(
            pool.eligible_at(t_ms, scenario.window, builder.name), state.base_fee_per_gas, blob_fee);

        SlotRecord slot;
        slot.slot = n;
        slot.timestamp = state.timestamp;
        slot.builder = builder.name;
        slot.strategy = builder.strategy;
        slot.blob_averse = averse;
        slot.blob_base_fee = blob_fee;
        slot.base_fee_per_gas = state.base_fee_per_gas;
        slot.excess_blob_gas = state.excess_blob_gas;
        slot.candidate_views = static_cast<std::uint32_t>(problem.candidates.size());
        if (options.shadow_pricing)
        {
            slot.shadow_greedy_revenue = greedy_pack(problem).total_revenue;
            slot.shadow_optimal_revenue = optimal_pack(problem).total_revenue;
        }

        const PackingResult packed = averse ? PackingResult{} : pack(builder.strategy, problem);

        BlockRecord block;
        block.block_number = n;
        block.timestamp = state.timestamp;
        block.builder = builder.name;
        block.gas_limit = params.block_gas_limit;
        block.base_fee_per_gas = state.base_fee_per_gas;
        block.excess_blob_gas = state.excess_blob_gas;

        std::vector<std::string> ids;
        for (const auto& v : packed.chosen)
        {
            const BlobTx& tx = known.at(v.tx_id);
            TxRecord rec;
            rec.tx_id = v.tx_id;
            rec.option_id = v.option_id;
            rec.sender = tx.sender;
            rec.slot = n;
            rec.blobs = v.blobs;
            rec.gas = v.gas;
            rec.priority_fee_per_gas = priority_of(tx, v.option_id);
            rec.is_private = tx.is_private;
            rec.first_seen_ms = tx.first_seen_ms;
            rec.fees = charge(v.gas, rec.priority_fee_per_gas, v.blobs, state, params);
            const std::int64_t first_possible = std::clamp<std::int64_t>(
                ceil_div(tx.first_seen_ms + scenario.window.min_lead_ms - scenario.genesis_ms(),
                    scenario.slot_ms()),
                1, static_cast<std::int64_t>(n));
            rec.delay = inclusion_delay(tx, t_ms, n, static_cast<std::uint64_t>(first_possible));

            block.txs.push_back({v.tx_id, v.option_id, tx.sender, v.blobs, v.gas,
                rec.priority_fee_per_gas});
            ids.push_back(v.tx_id);
            included_at.emplace(v.tx_id, n);
            metrics.txs.push_back(std::move(rec));
        }

        block.gas_used = scenario.reserved_non_blob_gas + packed.total_gas;
        state.gas_used = block.gas_used;
        state.blob_gas_used = BlobGas{std::uint64_t{packed.total_blobs} * params.gas_per_blob};

        slot.gas_used = block.gas_used;
        slot.blobs = packed.total_blobs;
        slot.txs = static_cast<std::uint32_t>(packed.chosen.size());
        slot.fees.exec_base_burned = state.base_fee_per_gas * packed.total_gas;
        slot.fees.exec_priority_to_builder = packed.total_revenue;
        slot.fees.blob_base_burned = blob_fee * state.blob_gas_used.value;

        running.slot = n;
        running.blob_base_burned += slot.fees.blob_base_burned;
        running.exec_base_burned += slot.fees.exec_base_burned;
        running.builder_priority += slot.fees.exec_priority_to_builder;
        metrics.cumulative.push_back(running);

        metrics.slots.push_back(std::move(slot));
        chain.trace.blocks.push_back(std::move(block));
        chain.blocks.push_back(state);

        pool.remove_included(ids);
        metrics.expired +=
            pool.expire_before(scenario.slot_time_ms(n + 1) - scenario.window.max_age_ms);

        const BlobGas next_excess =
            update_excess_blob_gas(state.excess_blob_gas, state.blob_gas_used, params);
        const Wei next_base =
            update_exec_base_fee(state.base_fee_per_gas, state.gas_used, params.gas_target(), params);
        state = BlockFeeState{};
        state.base_fee_per_gas = next_base;
        state.excess_blob_gas = next_excess;
    }
    metrics.pending_at_end = pool.size();

    // Auditor verdicts: public candidates in each slot's window that were
    // eventually included at or after that slot, plus the block's own txs.
    // Private txs are seen as the block shows them.
    for (std::size_t i = 0; i < metrics.slots.size(); ++i)
    {
        const auto& block = chain.trace.blocks[i];
        const std::uint64_t n = block.block_number;
        std::vector<IncludedTx> actual;
        for (const auto& rec : block.txs)
        {
            const BlobTx& tx = known.at(rec.tx_id);
            if (tx.is_private)
                actual.push_back({tx_from_block_record(rec), ""});
            else
                actual.push_back({tx, rec.option_id});
        }
        std::vector<BlobTx> eligible;
        for (const auto& id : public_window[n])
        {
            const auto it = included_at.find(id);
            if (it != included_at.end() && it->second >= n)
                eligible.push_back(known.at(id));
        }
        metrics.slots[i].classification = classify_block(
            actual, eligible, params.block_gas_limit, scenario.reserved_non_blob_gas, capacity);
    }

    std::map<std::string, SenderMetrics> senders;
    for (const auto& tx : metrics.txs)
    {
        auto& s = senders[tx.sender];
        s.sender = tx.sender;
        ++s.txs;
        s.blobs += tx.blobs;
        s.priority_total += tx.fees.exec_priority_to_builder;
    }
    for (auto& [name, s] : senders)
        metrics.senders.push_back(std::move(s));
    return result;
}

Report summarize(const RunMetrics& metrics)
{
    std::vector<BlockClassification> blocks;
    blocks.reserve(metrics.slots.size());
    for (const auto& s : metrics.slots)
        blocks.push_back(s.classification);
    std::vector<InclusionDelay> delays;
    delays.reserve(metrics.txs.size());
    for (const auto& t : metrics.txs)
        delays.push_back(t.delay);
    return summarize(blocks, delays);
}

namespace {

std::string optional_wei(const std::optional<Wei>& w)
{
    return w ? w->str() : std::string{};
}

}  // namespace

void write_slots_csv(std::ostream& out, const RunMetrics& metrics)
{
    csv::write_row(out, {"slot", "timestamp", "builder", "strategy", "blob_averse",
                            "blob_base_fee_wei", "base_fee_per_gas_wei", "excess_blob_gas",
                            "gas_used", "blobs", "txs", "candidate_views", "blob_base_burned_wei",
                            "exec_base_burned_wei", "builder_priority_wei", "verdict",
                            "actual_revenue_wei", "optimal_revenue_wei", "greedy_revenue_wei",
                            "relative_loss", "shadow_greedy_revenue_wei",
                            "shadow_optimal_revenue_wei"});
    for (const auto& s : metrics.slots)
    {
        const auto& c = s.classification;
        csv::write_row(out, {std::to_string(s.slot), std::to_string(s.timestamp), s.builder,
                                std::string{to_string(s.strategy)}, s.blob_averse ? "1" : "0",
                                s.blob_base_fee.str(), s.base_fee_per_gas.str(),
                                std::to_string(s.excess_blob_gas.value), std::to_string(s.gas_used),
                                std::to_string(s.blobs), std::to_string(s.txs),
                                std::to_string(s.candidate_views), s.fees.blob_base_burned.str(),
                                s.fees.exec_base_burned.str(), s.fees.exec_priority_to_builder.str(),
                                std::string{to_string(c.verdict)}, c.actual_revenue.str(),
                                c.optimal_revenue.str(), c.greedy_revenue.str(),
                                c.relative_loss && c.verdict != Verdict::NoBlobs
                                    ? format_ratio(*c.relative_loss, 6)
                                    : std::string{},
                                optional_wei(s.shadow_greedy_revenue),
                                optional_wei(s.shadow_optimal_revenue)});
    }
}

void write_tx_metrics_csv(std::ostream& out, const RunMetrics& metrics)
{
    csv::write_row(out, {"tx_id", "option_id", "sender", "slot", "blobs", "gas",
                            "priority_fee_per_gas_wei", "is_private", "first_seen_unix_ms",
                            "delay_ms", "delay_blocks", "exec_base_burned_wei",
                            "exec_priority_to_builder_wei", "blob_base_burned_wei"});
    for (const auto& t : metrics.txs)
    {
        csv::write_row(out, {t.tx_id, t.option_id, t.sender, std::to_string(t.slot),
                                std::to_string(t.blobs), std::to_string(t.gas),
                                t.priority_fee_per_gas.str(), t.is_private ? "1" : "0",
                                std::to_string(t.first_seen_ms), std::to_string(t.delay.millis),
                                std::to_string(t.delay.blocks), t.fees.exec_base_burned.str(),
                                t.fees.exec_priority_to_builder.str(), t.fees.blob_base_burned.str()});
    }
}

void write_cumulative_csv(std::ostream& out, const RunMetrics& metrics)
{
    csv::write_row(out, {"slot", "blob_base_burned_wei", "exec_base_burned_wei", "builder_priority_wei"});
    for (const auto& c : metrics.cumulative)
    {
        csv::write_row(out, {std::to_string(c.slot), c.blob_base_burned.str(),
                                c.exec_base_burned.str(), c.builder_priority.str()});
    }
}

void write_senders_csv(std::ostream& out, const RunMetrics& metrics)
{
    csv::write_row(out, {"sender", "txs", "blobs", "priority_total_wei", "priority_per_tx_wei",
                            "priority_per_blob_wei"});
    for (const auto& s : metrics.senders)
    {
        csv::write_row(out, {s.sender, std::to_string(s.txs), std::to_string(s.blobs),
                                s.priority_total.str(), format_ratio(s.priority_per_tx(), 3),
                                format_ratio(s.priority_per_blob(), 3)});
    }
}

nlohmann::json summary_json(const Scenario& scenario, const RunOptions& options,
    const RunResult& result)
{
    const auto& m = result.metrics;
    nlohmann::json j;
    j["seed"] = scenario.seed;
    j["slots"] = scenario.horizon_slots;
    j["shadow_pricing"] = options.shadow_pricing;
    j["arrivals"] = m.arrivals;
    j["included_txs"] = m.txs.size();
    j["expired"] = m.expired;
    j["pending_at_end"] = m.pending_at_end;
    j["report"] = summarize(m).to_json();
    const CumulativeRecord last = m.cumulative.empty() ? CumulativeRecord{} : m.cumulative.back();
    j["cumulative"] = {
        {"blob_base_burned_wei", last.blob_base_burned.str()},
        {"exec_base_burned_wei", last.exec_base_burned.str()},
        {"builder_priority_wei", last.builder_priority.str()},
    };
    if (options.shadow_pricing)
    {
        Wei greedy, optimal;
        for (const auto& s : m.slots)
        {
            greedy += s.shadow_greedy_revenue.value_or(Wei{});
            optimal += s.shadow_optimal_revenue.value_or(Wei{});
        }
        j["shadow"] = {{"greedy_revenue_wei", greedy.str()}, {"optimal_revenue_wei", optimal.str()}};
    }
    if (!m.slots.empty())
    {
        j["final_blob_base_fee_wei"] = m.slots.back().blob_base_fee.str();
        j["final_base_fee_per_gas_wei"] = m.slots.back().base_fee_per_gas.str();
    }
    return j;
}

void write_run(const std::filesystem::path& dir, const Scenario& scenario,
    const RunOptions& options, const RunResult& result)
{
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream f{dir / name, std::ios::binary};
        if (!f)
            throw std::runtime_error{"cannot write " + (dir / name).string()};
        return f;
    };
    {
        auto f = open("slots.csv");
        write_slots_csv(f, result.metrics);
    }
    {
        auto f = open("transactions.csv");
        write_tx_metrics_csv(f, result.metrics);
    }
    {
        auto f = open("cumulative.csv");
        write_cumulative_csv(f, result.metrics);
    }
    {
        auto f = open("senders.csv");
        write_senders_csv(f, result.metrics);
    }
    {
        auto f = open("summary.json");
        f << summary_json(scenario, options, result).dump(2) << '\n';
    }
    {
        auto f = open("blocks.csv");
        write_blocks_csv(f, result.chain.trace.blocks);
    }
    {
        auto f = open("mempool.csv");
        write_transactions_csv(f, result.chain.trace.mempool);
    }
}

}  // namespace blobmarket
