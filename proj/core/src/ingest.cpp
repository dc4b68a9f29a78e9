// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/csv.hpp>
#include <blobmarket/ingest.hpp>

#include <algorithm>
#include <ctime>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace blobmarket {

std::uint32_t BlockRecord::blob_count() const
{
    std::uint32_t n = 0;
    for (const auto& t : txs)
        n += t.num_blobs;
    return n;
}

BlocksCsv read_blocks_csv(std::istream& in)
{
    BlocksCsv result;
    csv::Reader reader{in};
    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!reader.next(fields, line))
        return result;
    const csv::Header header{fields};
    header.require({"block_number", "timestamp", "gas_used", "gas_limit", "base_fee_per_gas_wei",
        "excess_blob_gas", "tx_id", "option_id", "num_blobs", "gas_usage",
        "priority_fee_per_gas_wei"});

    std::map<std::uint64_t, BlockRecord> blocks;
    while (reader.next(fields, line))
    {
        if (fields.size() == 1 && fields[0].empty())
            continue;
        const csv::Row row{header, fields};
        std::uint64_t number = 0;
        try
        {
            number = row.u64("block_number");
        }
        catch (const std::exception& e)
        {
            result.issues.push_back({line, e.what()});
            continue;
        }

        auto [it, fresh] = blocks.try_emplace(number);
        BlockRecord& block = it->second;
        try
        {
            if (reader.last_record_malformed())
                throw std::invalid_argument{"unterminated quoted field"};
            if (fields.size() != header.size())
                throw std::invalid_argument{"expected " + std::to_string(header.size()) +
                                            " fields, got " + std::to_string(fields.size())};
            if (fresh)
            {
                block.block_number = number;
                block.timestamp = row.i64("timestamp");
                block.builder = std::string{row.text("builder")};
                if (!row.empty("is_pbs"))
                    block.is_pbs = row.boolean("is_pbs");
                block.gas_used = row.u64("gas_used");
                block.gas_limit = row.u64("gas_limit");
                block.base_fee_per_gas = Wei::parse(row.text("base_fee_per_gas_wei"));
                block.excess_blob_gas = BlobGas{row.u64("excess_blob_gas")};
            }
            if (!row.empty("tx_id"))
            {
                BlockTxRecord tx;
                tx.tx_id = std::string{row.text("tx_id")};
                tx.option_id = std::string{row.text("option_id")};
                tx.sender = std::string{row.text("sender")};
                const auto blobs = row.u64("num_blobs");
                if (blobs < 1 || blobs > kMaxBlobsPerTx)
                    throw std::invalid_argument{"num_blobs must be in 1..6"};
                tx.num_blobs = static_cast<std::uint32_t>(blobs);
                tx.gas_usage = row.u64("gas_usage");
                tx.priority_fee_per_gas = Wei::parse(row.text("priority_fee_per_gas_wei"));
                block.txs.push_back(std::move(tx));
            }
        }
        catch (const std::exception& e)
        {
            block.block_number = number;
            block.malformed = true;
            result.issues.push_back({line, "block " + std::to_string(number) + ": " + e.what()});
        }
    }
    for (auto& [number, block] : blocks)
        result.blocks.push_back(std::move(block));
    return result;
}

void write_blocks_csv(std::ostream& out, const std::vector<BlockRecord>& blocks)
{
    csv::write_row(out, {"block_number", "timestamp", "builder", "is_pbs", "gas_used", "gas_limit",
                            "base_fee_per_gas_wei", "excess_blob_gas", "tx_id", "option_id",
                            "sender", "num_blobs", "gas_usage", "priority_fee_per_gas_wei"});
    for (const auto& b : blocks)
    {
        const std::vector<std::string> head = {std::to_string(b.block_number),
            std::to_string(b.timestamp), b.builder,
            b.is_pbs ? (*b.is_pbs ? "1" : "0") : "", std::to_string(b.gas_used),
            std::to_string(b.gas_limit), b.base_fee_per_gas.str(),
            std::to_string(b.excess_blob_gas.value)};
        if (b.txs.empty())
        {
            auto row = head;
            row.insert(row.end(), 6, "");
            csv::write_row(out, row);
            continue;
        }
        for (const auto& t : b.txs)
        {
            auto row = head;
            row.insert(row.end(), {t.tx_id, t.option_id, t.sender, std::to_string(t.num_blobs),
                                      std::to_string(t.gas_usage), t.priority_fee_per_gas.str()});
            csv::write_row(out, row);
        }
    }
}

BlobTx tx_from_block_record(const BlockTxRecord& rec)
{
    BlobTx tx;
    tx.id = rec.tx_id;
    tx.sender = rec.sender;
    tx.num_blobs = rec.num_blobs;
    tx.gas_usage = rec.gas_usage;
    tx.priority_fee_per_gas = rec.priority_fee_per_gas;
    tx.max_fee_per_gas = rec.priority_fee_per_gas;
    tx.is_private = true;
    return tx;
}

std::int64_t expected_block_time_ms(const std::vector<BlockRecord>& blocks, std::size_t i,
    const ProtocolParams& params)
{
    const auto& b = blocks[i];
    if (i > 0 && blocks[i - 1].block_number + 1 == b.block_number && !blocks[i - 1].malformed)
        return (blocks[i - 1].timestamp + static_cast<std::int64_t>(params.slot_seconds)) * 1000;
    return b.timestamp * 1000;
}

namespace {

/// Earliest-sighting copy of each mempool transaction.
std::unordered_map<std::string, BlobTx> index_mempool(const std::vector<BlobTx>& mempool)
{
    std::unordered_map<std::string, BlobTx> index;
    for (const auto& tx : mempool)
    {
        auto [it, fresh] = index.try_emplace(tx.id, tx);
        if (!fresh)
            it->second.first_seen_ms = std::min(it->second.first_seen_ms, tx.first_seen_ms);
    }
    return index;
}

}  // namespace

TraceClassification classify_trace(const Trace& trace, const EligibilityWindow& window,
    const ProtocolParams& params)
{
    window.validate();
    TraceClassification out;
    const auto& blocks = trace.blocks;
    const auto mempool = index_mempool(trace.mempool);

    std::vector<const BlobTx*> by_seen;
    by_seen.reserve(mempool.size());
    for (const auto& [id, tx] : mempool)
        by_seen.push_back(&tx);
    std::sort(by_seen.begin(), by_seen.end(), [](const BlobTx* a, const BlobTx* b) {
        return a->first_seen_ms != b->first_seen_ms ? a->first_seen_ms < b->first_seen_ms
                                                    : a->id < b->id;
    });

    std::unordered_map<std::string, std::uint64_t> included_at;
    for (const auto& b : blocks)
    {
        for (const auto& t : b.txs)
            included_at.try_emplace(t.tx_id, b.block_number);
    }

    std::vector<std::int64_t> expected(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        expected[i] = expected_block_time_ms(blocks, i, params);

    // First block (index) whose window contains `first_seen`.
    auto first_possible_index = [&](std::int64_t first_seen) -> std::optional<std::size_t> {
        const auto it = std::lower_bound(
            expected.begin(), expected.end(), first_seen + window.min_lead_ms);
        if (it == expected.end())
            return std::nullopt;
        const auto idx = static_cast<std::size_t>(it - expected.begin());
        if (!window.contains(first_seen, expected[idx]))
            return std::nullopt;
        return idx;
    };

    for (std::size_t i = 0; i < blocks.size(); ++i)
    {
        const auto& block = blocks[i];
        TraceBlockRow row;
        row.block_number = block.block_number;
        if (block.malformed)
        {
            row.malformed = true;
            ++out.malformed_blocks;
            out.blocks.push_back(std::move(row));
            continue;
        }

        std::vector<IncludedTx> actual;
        std::uint64_t blob_tx_gas = 0;
        for (const auto& rec : block.txs)
        {
            blob_tx_gas += rec.gas_usage;
            const auto it = mempool.find(rec.tx_id);
            if (it != mempool.end() && it->second.option(rec.option_id))
            {
                actual.push_back({it->second, rec.option_id});
                continue;
            }
            ++out.unresolved_refs;
            actual.push_back({tx_from_block_record(rec), ""});
        }

        const std::int64_t t = expected[i];
        std::vector<BlobTx> eligible;
        auto lo = std::lower_bound(by_seen.begin(), by_seen.end(), t - window.max_age_ms,
            [](const BlobTx* tx, std::int64_t v) { return tx->first_seen_ms < v; });
        for (auto it = lo; it != by_seen.end() && (*it)->first_seen_ms <= t - window.min_lead_ms; ++it)
        {
            const auto inc = included_at.find((*it)->id);
            if (inc != included_at.end() && inc->second >= block.block_number)
                eligible.push_back(**it);
        }

        const std::uint64_t non_blob = block.gas_used > blob_tx_gas ? block.gas_used - blob_tx_gas : 0;
        try
        {
            row.classification = classify_block(actual, eligible, block.gas_limit, non_blob,
                static_cast<std::uint32_t>(params.max_blobs_per_block));
        }
        catch (const std::invalid_argument&)
        {
            row.malformed = true;
            ++out.malformed_blocks;
            out.blocks.push_back(std::move(row));
            continue;
        }
        out.blocks.push_back(std::move(row));

        const std::int64_t inclusion_ms = block.timestamp * 1000;
        for (const auto& inc : actual)
        {
            if (inc.tx.is_private || !mempool.contains(inc.tx.id))
                continue;
            if (inclusion_ms < inc.tx.first_seen_ms)
            {
                ++out.clock_skew;
                continue;
            }
            std::uint64_t first_possible = block.block_number;
            if (const auto idx = first_possible_index(inc.tx.first_seen_ms))
                first_possible = std::min(first_possible, blocks[*idx].block_number);
            out.delays.push_back({inc.tx.id, block.block_number,
                inclusion_delay(inc.tx, inclusion_ms, block.block_number, first_possible)});
        }
    }
    return out;
}

void write_classification_csv(std::ostream& out, const TraceClassification& result)
{
    csv::write_row(out, {"block_number", "verdict", "actual_revenue_wei", "optimal_revenue_wei",
                            "greedy_revenue_wei", "relative_loss", "blobs_actual", "blobs_optimal"});
    for (const auto& row : result.blocks)
    {
        if (row.malformed)
        {
            csv::write_row(out, {std::to_string(row.block_number), "Malformed", "", "", "", "", "", ""});
            continue;
        }
        const auto& c = row.classification;
        const bool has_loss = c.verdict != Verdict::NoBlobs && c.relative_loss;
        csv::write_row(out, {std::to_string(row.block_number), to_string(c.verdict),
                                c.actual_revenue.str(), c.optimal_revenue.str(), c.greedy_revenue.str(),
                                has_loss ? format_ratio(*c.relative_loss, 6) : std::string{},
                                std::to_string(c.blobs_actual), std::to_string(c.blobs_optimal)});
    }
}

void write_delays_csv(std::ostream& out, const TraceClassification& result)
{
    csv::write_row(out, {"tx_id", "block_number", "delay_ms", "delay_blocks"});
    for (const auto& d : result.delays)
    {
        csv::write_row(out, {d.tx_id, std::to_string(d.block_number), std::to_string(d.delay.millis),
                                std::to_string(d.delay.blocks)});
    }
}

Report summarize(const TraceClassification& result)
{
    std::vector<BlockClassification> blocks;
    for (const auto& row : result.blocks)
    {
        if (!row.malformed)
            blocks.push_back(row.classification);
    }
    std::vector<InclusionDelay> delays;
    for (const auto& d : result.delays)
        delays.push_back(d.delay);
    return summarize(blocks, delays);
}

std::string utc_day(std::int64_t unix_seconds)
{
    const std::time_t t = static_cast<std::time_t>(unix_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[16];
    std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
    return buf;
}

PrivateShare private_share(const Trace& trace, const std::optional<std::string>& sender_filter)
{
    std::unordered_map<std::string, const BlobTx*> mempool;
    for (const auto& tx : trace.mempool)
        mempool.try_emplace(tx.id, &tx);

    std::map<std::string, DailyShare> daily;
    std::map<std::pair<std::string, std::string>, SenderDailyShare> by_sender;
    for (const auto& block : trace.blocks)
    {
        const auto day = utc_day(block.timestamp);
        for (const auto& rec : block.txs)
        {
            const auto it = mempool.find(rec.tx_id);
            std::string sender = rec.sender;
            if (sender.empty() && it != mempool.end())
                sender = it->second->sender;
            if (sender.empty())
                sender = "unknown";
            if (sender_filter && sender != *sender_filter)
                continue;
            const bool is_private = it == mempool.end();

            auto& d = daily[day];
            d.day = day;
            ++d.total_txs;
            auto& s = by_sender[{day, sender}];
            s.day = day;
            s.sender = sender;
            ++s.total_txs;
            if (is_private)
            {
                ++d.private_txs;
                ++s.private_txs;
            }
        }
    }
    PrivateShare out;
    for (auto& [k, v] : daily)
        out.daily.push_back(std::move(v));
    for (auto& [k, v] : by_sender)
        out.by_sender.push_back(std::move(v));
    return out;
}

void write_private_share_csv(std::ostream& out, const PrivateShare& share)
{
    csv::write_row(out, {"day", "private_txs", "total_txs", "private_share"});
    for (const auto& d : share.daily)
    {
        csv::write_row(out, {d.day, std::to_string(d.private_txs), std::to_string(d.total_txs),
                                format_ratio(d.share(), 6)});
    }
}

void write_private_share_by_sender_csv(std::ostream& out, const PrivateShare& share)
{
    csv::write_row(out, {"day", "sender", "private_txs", "total_txs", "private_share"});
    for (const auto& s : share.by_sender)
    {
        const Ratio r = s.total_txs ? Ratio{s.private_txs, s.total_txs} : Ratio{0};
        csv::write_row(out, {s.day, s.sender, std::to_string(s.private_txs),
                                std::to_string(s.total_txs), format_ratio(r, 6)});
    }
}

}  // namespace blobmarket
