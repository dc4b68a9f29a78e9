// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/csv.hpp>
#include <blobmarket/fee_mechanism.hpp>
#include <blobmarket/transaction.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace blobmarket {

namespace {
void check_tx_bounds(std::uint32_t num_blobs, std::uint64_t gas_usage, const std::string& what)
{
    if (num_blobs < 1 || num_blobs > kMaxBlobsPerTx)
        throw std::invalid_argument{what + ": blob count must be in 1..6"};
    if (gas_usage < kMinTxGas)
        throw std::invalid_argument{what + ": gas usage below 21000"};
}
}  // namespace

void SubsetBidGroup::validate() const
{
    if (options.size() < 2)
        throw std::invalid_argument{"subset bid group needs at least two options"};
    std::set<std::string> ids;
    for (const auto& opt : options)
    {
        if (opt.option_id.empty())
            throw std::invalid_argument{"subset bid option without an id"};
        if (!ids.insert(opt.option_id).second)
            throw std::invalid_argument{"duplicate subset bid option id '" + opt.option_id + "'"};
        check_tx_bounds(opt.num_blobs, opt.gas_usage, "option " + opt.option_id);
    }
}

std::optional<SubsetBidOption> BlobTx::option(const std::string& option_id) const
{
    if (!subset_options)
    {
        if (!option_id.empty())
            return std::nullopt;
        return SubsetBidOption{"", num_blobs, gas_usage, priority_fee_per_gas};
    }
    for (const auto& opt : subset_options->options)
    {
        if (opt.option_id == option_id)
            return opt;
    }
    return std::nullopt;
}

void BlobTx::validate() const
{
    if (id.empty())
        throw std::invalid_argument{"transaction without an id"};
    check_tx_bounds(num_blobs, gas_usage, "tx " + id);
    if (priority_fee_per_gas > max_fee_per_gas)
        throw std::invalid_argument{"tx " + id + ": priority fee exceeds max fee per gas"};
    if (subset_options)
    {
        subset_options->validate();
        for (const auto& opt : subset_options->options)
        {
            if (opt.priority_fee_per_gas > max_fee_per_gas)
                throw std::invalid_argument{
                    "tx " + id + ": option " + opt.option_id + " priority fee exceeds max fee"};
        }
    }
}

Wei revenue(const BlobTx& tx)
{
    return tx.priority_fee_per_gas * tx.gas_usage;
}

Wei revenue(const SubsetBidOption& option)
{
    return option.priority_fee_per_gas * option.gas_usage;
}

std::vector<BuilderRevenueView> expand_group(const BlobTx& tx)
{
    std::vector<BuilderRevenueView> views;
    if (!tx.subset_options)
    {
        views.push_back({tx.id, "", "", tx.num_blobs, tx.gas_usage, revenue(tx)});
        return views;
    }
    tx.subset_options->validate();
    views.reserve(tx.subset_options->options.size());
    for (const auto& opt : tx.subset_options->options)
        views.push_back({tx.id, opt.option_id, tx.id, opt.num_blobs, opt.gas_usage, revenue(opt)});
    return views;
}

TransactionCsv read_transactions_csv(std::istream& in)
{
    TransactionCsv result;
    csv::Reader reader{in};
    std::vector<std::string> fields;
    std::size_t line = 0;
    if (!reader.next(fields, line))
        return result;

    const csv::Header header{fields};
    header.require({"id", "sender", "num_blobs", "gas_usage", "priority_fee_per_gas_wei",
        "max_fee_per_gas_wei", "max_fee_per_blob_gas_wei", "first_seen_unix_ms", "is_private",
        "group_id", "option_id"});

    std::unordered_map<std::string, std::size_t> by_id;
    std::vector<std::size_t> first_line;
    while (reader.next(fields, line))
    {
        if (fields.size() == 1 && fields[0].empty())
            continue;  // blank line
        try
        {
            if (reader.last_record_malformed())
                throw std::invalid_argument{"unterminated quoted field"};
            if (fields.size() != header.size())
                throw std::invalid_argument{"expected " + std::to_string(header.size()) +
                                            " fields, got " + std::to_string(fields.size())};
            const csv::Row row{header, fields};
            BlobTx tx;
            tx.id = std::string{row.text("id")};
            tx.sender = std::string{row.text("sender")};
            tx.num_blobs = static_cast<std::uint32_t>(row.u64("num_blobs"));
            tx.gas_usage = row.u64("gas_usage");
            tx.priority_fee_per_gas = Wei::parse(row.text("priority_fee_per_gas_wei"));
            tx.max_fee_per_gas = Wei::parse(row.text("max_fee_per_gas_wei"));
            tx.max_fee_per_blob_gas = Wei::parse(row.text("max_fee_per_blob_gas_wei"));
            tx.first_seen_ms = row.i64("first_seen_unix_ms");
            tx.is_private = row.boolean("is_private");
            if (tx.id.empty())
                throw std::invalid_argument{"empty id"};
            if (row.u64("num_blobs") > kMaxBlobsPerTx)
                throw std::invalid_argument{"blob count must be in 1..6"};

            const bool grouped = !row.empty("group_id");
            if (grouped && row.empty("option_id"))
                throw std::invalid_argument{"group row without option_id"};
            if (!grouped && !row.empty("option_id"))
                throw std::invalid_argument{"option_id without group_id"};

            if (!grouped)
                tx.validate();

            auto it = by_id.find(tx.id);
            if (it == by_id.end())
            {
                if (grouped)
                {
                    tx.subset_options = SubsetBidGroup{{SubsetBidOption{std::string{row.text("option_id")},
                        tx.num_blobs, tx.gas_usage, tx.priority_fee_per_gas}}};
                }
                by_id.emplace(tx.id, result.transactions.size());
                result.transactions.push_back(std::move(tx));
                first_line.push_back(line);
                continue;
            }

            BlobTx& existing = result.transactions[it->second];
            if (existing.is_subset_bid() != grouped)
                throw std::invalid_argument{"id '" + tx.id + "' mixes plain and subset rows"};
            existing.first_seen_ms = std::min(existing.first_seen_ms, tx.first_seen_ms);
            if (grouped)
            {
                auto& options = existing.subset_options->options;
                const std::string option_id{row.text("option_id")};
                const bool seen = std::any_of(options.begin(), options.end(),
                    [&](const auto& o) { return o.option_id == option_id; });
                if (!seen)
                    options.push_back({option_id, tx.num_blobs, tx.gas_usage, tx.priority_fee_per_gas});
            }
        }
        catch (const std::exception& e)
        {
            result.issues.push_back({line, e.what()});
        }
    }

    // Subset bids are only complete once every option row is read.
    std::vector<BlobTx> valid;
    valid.reserve(result.transactions.size());
    for (std::size_t i = 0; i < result.transactions.size(); ++i)
    {
        try
        {
            result.transactions[i].validate();
            valid.push_back(std::move(result.transactions[i]));
        }
        catch (const std::exception& e)
        {
            result.issues.push_back({first_line[i], e.what()});
        }
    }
    result.transactions = std::move(valid);
    std::stable_sort(result.issues.begin(), result.issues.end(),
        [](const CsvIssue& a, const CsvIssue& b) { return a.line < b.line; });
    return result;
}

void write_transactions_csv(std::ostream& out, const std::vector<BlobTx>& txs)
{
    csv::write_row(out, {"id", "sender", "num_blobs", "gas_usage", "priority_fee_per_gas_wei",
                            "max_fee_per_gas_wei", "max_fee_per_blob_gas_wei",
                            "first_seen_unix_ms", "is_private", "group_id", "option_id"});
    auto emit = [&](const BlobTx& tx, std::uint32_t blobs, std::uint64_t gas, const Wei& prio,
                    const std::string& group, const std::string& option) {
        csv::write_row(out, {tx.id, tx.sender, std::to_string(blobs), std::to_string(gas),
                                prio.str(), tx.max_fee_per_gas.str(), tx.max_fee_per_blob_gas.str(),
                                std::to_string(tx.first_seen_ms), tx.is_private ? "1" : "0", group,
                                option});
    };
    for (const auto& tx : txs)
    {
        if (!tx.subset_options)
        {
            emit(tx, tx.num_blobs, tx.gas_usage, tx.priority_fee_per_gas, "", "");
            continue;
        }
        for (const auto& opt : tx.subset_options->options)
            emit(tx, opt.num_blobs, opt.gas_usage, opt.priority_fee_per_gas, tx.id, opt.option_id);
    }
}

}  // namespace blobmarket
