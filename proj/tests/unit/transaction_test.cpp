// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/transaction.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace blobmarket {
namespace {

BlobTx grouped(std::string id, std::vector<SubsetBidOption> options)
{
    BlobTx tx;
    tx.id = std::move(id);
    tx.sender = "l2";
    tx.num_blobs = options.front().num_blobs;
    tx.gas_usage = options.front().gas_usage;
    tx.priority_fee_per_gas = options.front().priority_fee_per_gas;
    tx.max_fee_per_gas = Wei::gwei(100);
    tx.max_fee_per_blob_gas = Wei::gwei(100);
    tx.subset_options = SubsetBidGroup{std::move(options)};
    return tx;
}

TEST(Revenue, GasTimesPriority)
{
    BlobTx tx;
    tx.gas_usage = 1;
    tx.priority_fee_per_gas = 2;
    EXPECT_EQ(revenue(tx), Wei{2});
    tx.gas_usage = 21'000;
    tx.priority_fee_per_gas = 0;
    EXPECT_TRUE(revenue(tx).is_zero());
    // 1.99 fee units, scaled by 100.
    EXPECT_EQ(revenue(SubsetBidOption{"x", 3, 1, 199}), Wei{199});
}

TEST(ExpandGroup, PlainTxIsOneView)
{
    BlobTx tx;
    tx.id = "p";
    tx.num_blobs = 5;
    tx.gas_usage = 1;
    tx.priority_fee_per_gas = 2;
    const auto views = expand_group(tx);
    ASSERT_EQ(views.size(), 1u);
    EXPECT_EQ(views[0].blobs, 5u);
    EXPECT_EQ(views[0].revenue, Wei{2});
    EXPECT_TRUE(views[0].option_id.empty());
    EXPECT_TRUE(views[0].group_id.empty());
    EXPECT_EQ(views[0].exclusion_key(), "p");
}

TEST(ExpandGroup, OneViewPerOptionSharingTheGroup)
{
    const auto tx = grouped("g", {{"A", 1, 21'000, 3}, {"B", 6, 21'000, 10}});
    const auto views = expand_group(tx);
    ASSERT_EQ(views.size(), 2u);
    EXPECT_EQ(views[0].group_id, "g");
    EXPECT_EQ(views[1].group_id, "g");
    EXPECT_EQ(views[0].exclusion_key(), views[1].exclusion_key());
    EXPECT_EQ(views[1].blobs, 6u);
    EXPECT_EQ(views[1].revenue, Wei{210'000});
}

TEST(SubsetBidGroup, Validation)
{
    EXPECT_THROW(expand_group(grouped("g", {{"A", 1, 21'000, 3}})), std::invalid_argument);
    EXPECT_THROW((SubsetBidGroup{{{"A", 1, 21'000, 3}, {"A", 2, 21'000, 3}}}.validate()),
        std::invalid_argument);
    EXPECT_THROW((SubsetBidGroup{{{"A", 1, 21'000, 3}, {"", 2, 21'000, 3}}}.validate()),
        std::invalid_argument);
    EXPECT_THROW((SubsetBidGroup{{{"A", 1, 21'000, 3}, {"B", 7, 21'000, 3}}}.validate()),
        std::invalid_argument);
    EXPECT_NO_THROW((SubsetBidGroup{{{"A", 1, 21'000, 3}, {"B", 6, 21'000, 3}}}.validate()));
}

TEST(BlobTx, Validation)
{
    BlobTx tx;
    tx.id = "t";
    tx.max_fee_per_gas = 10;
    tx.priority_fee_per_gas = 10;
    EXPECT_NO_THROW(tx.validate());
    tx.priority_fee_per_gas = 11;
    EXPECT_THROW(tx.validate(), std::invalid_argument);
    tx.priority_fee_per_gas = 1;
    tx.num_blobs = 0;
    EXPECT_THROW(tx.validate(), std::invalid_argument);
    tx.num_blobs = 7;
    EXPECT_THROW(tx.validate(), std::invalid_argument);
    tx.num_blobs = 1;
    tx.gas_usage = 20'999;
    EXPECT_THROW(tx.validate(), std::invalid_argument);
}

TEST(BlobTx, OptionLookup)
{
    const auto tx = grouped("g", {{"A", 1, 21'000, 3}, {"B", 6, 21'000, 10}});
    ASSERT_TRUE(tx.option("B"));
    EXPECT_EQ(tx.option("B")->num_blobs, 6u);
    EXPECT_FALSE(tx.option(""));
    EXPECT_FALSE(tx.option("C"));
    BlobTx plain;
    plain.num_blobs = 4;
    ASSERT_TRUE(plain.option(""));
    EXPECT_EQ(plain.option("")->num_blobs, 4u);
    EXPECT_FALSE(plain.option("A"));
}

const char* kHeader = "id,sender,num_blobs,gas_usage,priority_fee_per_gas_wei,max_fee_per_gas_wei,"
                      "max_fee_per_blob_gas_wei,first_seen_unix_ms,is_private,group_id,option_id\n";

TEST(TransactionCsv, RoundTrip)
{
    BlobTx plain;
    plain.id = "tx,1";  // needs quoting
    plain.sender = "say \"hi\"";
    plain.num_blobs = 3;
    plain.gas_usage = 50'000;
    plain.priority_fee_per_gas = Wei::gwei(2);
    plain.max_fee_per_gas = Wei::parse("100000000000000000000000");
    plain.max_fee_per_blob_gas = Wei::gwei(7);
    plain.first_seen_ms = 1'710'000'000'123;
    auto group = grouped("g", {{"b1", 1, 21'000, 1}, {"b2", 2, 21'000, 2}, {"b3", 3, 30'000, 3}});
    group.first_seen_ms = 5;
    group.is_private = true;

    std::stringstream s;
    write_transactions_csv(s, {plain, group});
    const auto back = read_transactions_csv(s);
    EXPECT_TRUE(back.issues.empty());
    ASSERT_EQ(back.transactions.size(), 2u);
    EXPECT_EQ(back.transactions[0], plain);
    EXPECT_EQ(back.transactions[1], group);
}

TEST(TransactionCsv, DuplicatesCollapseToEarliestSighting)
{
    std::stringstream s;
    s << kHeader << "a,s,1,21000,1,10,10,500,0,,\n"
      << "a,s,1,21000,1,10,10,300,0,,\n"
      << "a,s,1,21000,1,10,10,400,0,,\n";
    const auto r = read_transactions_csv(s);
    ASSERT_EQ(r.transactions.size(), 1u);
    EXPECT_EQ(r.transactions[0].first_seen_ms, 300);
}

TEST(TransactionCsv, BadRowsReportedWithLineNumbers)
{
    std::stringstream s;
    s << kHeader << "ok,s,1,21000,1,10,10,0,0,,\n"
      << "bad,s,nine,21000,1,10,10,0,0,,\n"
      << "seven,s,7,21000,1,10,10,0,0,,\n"
      << "short,s,1\n"
      << "lonely,s,1,21000,1,10,10,0,0,g,only\n"
      << "ok2,s,2,21000,1,10,10,0,0,,\n";
    const auto r = read_transactions_csv(s);
    ASSERT_EQ(r.transactions.size(), 2u);
    EXPECT_EQ(r.transactions[1].id, "ok2");
    ASSERT_EQ(r.issues.size(), 4u);
    EXPECT_EQ(r.issues[0].line, 3u);
    EXPECT_EQ(r.issues[1].line, 4u);
    EXPECT_EQ(r.issues[2].line, 5u);
    EXPECT_EQ(r.issues[3].line, 6u);  // single-option group fails final validation
}

TEST(TransactionCsv, MissingColumnIsFatal)
{
    std::stringstream s;
    s << "id,sender\nx,y\n";
    EXPECT_THROW(read_transactions_csv(s), std::runtime_error);
}

TEST(TransactionCsv, EmptyInput)
{
    std::stringstream s;
    const auto r = read_transactions_csv(s);
    EXPECT_TRUE(r.transactions.empty());
    EXPECT_TRUE(r.issues.empty());
}

}  // namespace
}  // namespace blobmarket
