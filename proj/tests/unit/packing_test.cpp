// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/packing.hpp>

#include <oracles.hpp>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <gtest/gtest.h>

#include <ostream>
#include <set>

namespace blobmarket {
namespace {

using testing::brute_force_pack;
using testing::greedy_trap;
using testing::InstanceShape;
using testing::random_instance;
using testing::view;

PackingProblem problem(std::vector<BuilderRevenueView> c, std::uint32_t capacity = 6,
    std::optional<std::uint64_t> budget = std::nullopt)
{
    return PackingProblem{std::move(c), capacity, budget};
}

std::set<std::string> chosen_ids(const PackingResult& r)
{
    std::set<std::string> out;
    for (const auto& v : r.chosen)
        out.insert(v.tx_id + "/" + v.option_id);
    return out;
}

TEST(GreedyPack, TakesTheFiveBlobBid)
{
    const auto p = problem(greedy_trap());
    const auto r = greedy_pack(p);
    EXPECT_EQ(r.total_revenue, Wei{200});
    EXPECT_EQ(r.total_blobs, 5u);
    EXPECT_EQ(chosen_ids(r), (std::set<std::string>{"a/"}));
    EXPECT_TRUE(is_feasible(p, r));
}

TEST(GreedyPack, TrivialCases)
{
    EXPECT_TRUE(greedy_pack(problem({})).chosen.empty());
    EXPECT_TRUE(greedy_pack(problem({})).total_revenue.is_zero());
    const auto r = greedy_pack(problem({view("six", 6, 21'000, 77)}));
    EXPECT_EQ(r.total_revenue, Wei{77});
    EXPECT_EQ(r.total_blobs, 6u);
}

TEST(OptimalPack, PairsTheThreeBlobBids)
{
    const auto p = problem(greedy_trap());
    for (const auto& r : {optimal_pack(p), optimal_pack_subset(p)})
    {
        EXPECT_EQ(r.total_revenue, Wei{398});
        EXPECT_EQ(r.total_blobs, 6u);
        EXPECT_EQ(chosen_ids(r), (std::set<std::string>{"b/", "c/"}));
        EXPECT_TRUE(is_feasible(p, r));
    }
}

TEST(OptimalPack, ZeroCapacityIsEmpty)
{
    const auto p = problem(greedy_trap(), 0);
    EXPECT_TRUE(optimal_pack(p).chosen.empty());
    EXPECT_TRUE(optimal_pack_subset(p).chosen.empty());
    EXPECT_TRUE(greedy_pack(p).chosen.empty());
}

TEST(OptimalPack, GroupPicksOneOption)
{
    std::vector<BuilderRevenueView> c{
        view("g", 1, 21'000, 10, "one"), view("g", 6, 21'000, 11, "six"), view("p", 5, 21'000, 50)};
    const auto p = problem(c);
    ASSERT_EQ(brute_force_pack(p).revenue, Wei{60});
    for (const auto& r : {optimal_pack(p), optimal_pack_subset(p)})
    {
        EXPECT_EQ(r.total_revenue, Wei{60});
        EXPECT_EQ(chosen_ids(r), (std::set<std::string>{"g/one", "p/"}));
    }
}

TEST(OptimalPack, SingleGroupTakesDominantOption)
{
    const auto p = problem({view("g", 1, 21'000, 3, "A"), view("g", 6, 21'000, 10, "B")});
    for (const auto& r : {optimal_pack(p), optimal_pack_subset(p), greedy_pack(p)})
    {
        EXPECT_EQ(r.total_revenue, Wei{10});
        EXPECT_EQ(r.total_blobs, 6u);
    }
}

TEST(OptimalPack, GasBudgetBinds)
{
    // Revenue favours the two heavy txs but only one fits the budget.
    const auto p = problem({view("h1", 1, 600'000, 100), view("h2", 1, 600'000, 100),
                               view("l1", 1, 21'000, 60), view("l2", 1, 21'000, 60)},
        6, 700'000);
    for (const auto& r : {optimal_pack(p), optimal_pack_subset(p)})
    {
        EXPECT_EQ(r.total_revenue, Wei{220});
        EXPECT_LE(r.total_gas, 700'000u);
        EXPECT_TRUE(is_feasible(p, r));
    }
    const auto g = greedy_pack(p);
    EXPECT_TRUE(is_feasible(p, g));
    EXPECT_LE(g.total_gas, 700'000u);
}

TEST(OptimalPack, SubsetBiddingFillsTheBlock)
{
    // A 6-blob bidder at 1 per blob next to a 7-paying single blob.
    const auto plain = problem({view("big", 6, 21'000, 6), view("hi", 1, 21'000, 7)});
    const auto rp = optimal_pack(plain);
    EXPECT_EQ(rp.total_revenue, Wei{7});
    EXPECT_EQ(rp.total_blobs, 1u);

    std::vector<BuilderRevenueView> c{view("hi", 1, 21'000, 7)};
    for (std::uint32_t k = 1; k <= 6; ++k)
        c.push_back(view("big", k, 21'000, k, "b" + std::to_string(k)));
    const auto subset = problem(c);
    const auto rs = optimal_pack_subset(subset);
    EXPECT_EQ(rs.total_revenue, Wei{12});
    EXPECT_EQ(rs.total_blobs, 6u);
    EXPECT_EQ(optimal_pack(subset).total_revenue, rs.total_revenue);
}

TEST(PackingProblem, Validation)
{
    EXPECT_THROW(problem({view("a", 0, 21'000, 1)}).validate(), std::invalid_argument);
    EXPECT_THROW(problem({view("a", 7, 21'000, 1)}).validate(), std::invalid_argument);
    EXPECT_THROW(problem({view("a", 1, 21'000, 1), view("a", 2, 21'000, 1)}).validate(),
        std::invalid_argument);
    EXPECT_THROW(problem({}, kMaxPackingCapacity + 1).validate(), std::invalid_argument);
    EXPECT_NO_THROW(problem({}, kMaxPackingCapacity).validate());
}

TEST(PacksBefore, TieBreakOrder)
{
    EXPECT_TRUE(packs_before(view("z", 6, 9, 10), view("a", 1, 1, 9)));
    EXPECT_TRUE(packs_before(view("z", 1, 9, 10), view("a", 2, 1, 10)));
    EXPECT_TRUE(packs_before(view("z", 1, 1, 10), view("a", 1, 2, 10)));
    EXPECT_TRUE(packs_before(view("a", 1, 1, 10), view("b", 1, 1, 10)));
    EXPECT_TRUE(packs_before(view("a", 1, 1, 10, "x"), view("a", 1, 1, 10, "y")));
    EXPECT_FALSE(packs_before(view("a", 1, 1, 10), view("a", 1, 1, 10)));
}

TEST(IsFeasible, DetectsViolations)
{
    const auto p = problem(greedy_trap());
    PackingResult r;
    r.chosen = {greedy_trap()[0], greedy_trap()[1]};
    r.total_blobs = 8;
    r.total_gas = 2;
    r.total_revenue = 399;
    EXPECT_FALSE(is_feasible(p, r));  // over capacity

    const auto g = problem({view("g", 1, 1, 1, "x"), view("g", 1, 1, 1, "y")});
    PackingResult both;
    both.chosen = g.candidates;
    both.total_blobs = 2;
    both.total_gas = 2;
    both.total_revenue = 2;
    EXPECT_FALSE(is_feasible(g, both));  // two options of one group

    PackingResult wrong_total = greedy_pack(p);
    wrong_total.total_revenue += Wei{1};
    EXPECT_FALSE(is_feasible(p, wrong_total));
}

struct OracleCase
{
    const char* name;
    InstanceShape shape;
};

void PrintTo(const OracleCase& c, std::ostream* os)
{
    *os << c.name;
}

class OracleEquivalence : public ::testing::TestWithParam<OracleCase>
{};

TEST_P(OracleEquivalence, MatchesExhaustiveEnumeration)
{
    boost::random::mt19937_64 rng{std::hash<std::string>{}(GetParam().name)};
    for (int i = 0; i < 250; ++i)
    {
        const auto p = random_instance(rng, GetParam().shape);
        const auto oracle = brute_force_pack(p);
        const auto opt = optimal_pack(p);
        const auto sub = optimal_pack_subset(p);
        const auto grd = greedy_pack(p);
        ASSERT_EQ(opt.total_revenue, oracle.revenue) << "instance " << i;
        ASSERT_EQ(sub.total_revenue, oracle.revenue) << "instance " << i;
        ASSERT_TRUE(is_feasible(p, opt));
        ASSERT_TRUE(is_feasible(p, sub));
        ASSERT_TRUE(is_feasible(p, grd));
        ASSERT_GE(opt.total_revenue, grd.total_revenue);
    }
}

INSTANTIATE_TEST_SUITE_P(Shapes, OracleEquivalence,
    ::testing::Values(OracleCase{"plain", {12, false, false, 6}},
        OracleCase{"groups", {12, true, false, 6}}, OracleCase{"budget", {12, false, true, 6}},
        OracleCase{"groups_budget", {12, true, true, 6}},
        OracleCase{"wide", {14, true, true, 12}}, OracleCase{"narrow", {12, true, true, 2}}),
    [](const auto& info) { return std::string{info.param.name}; });

TEST(OptimalPack, ManyIdenticalCandidatesStayFast)
{
    // Dominance pruning keeps large pools tractable.
    std::vector<BuilderRevenueView> c;
    for (int i = 0; i < 3000; ++i)
        c.push_back(view("t" + std::to_string(i), 1 + i % 6, 21'000 + i % 7, 1000 + i % 13));
    const auto p = problem(c, 6, 20'000'000);
    const auto opt = optimal_pack(p);
    const auto sub = optimal_pack_subset(p);
    EXPECT_EQ(opt.total_revenue, sub.total_revenue);
    EXPECT_GE(opt.total_revenue, greedy_pack(p).total_revenue);
    EXPECT_TRUE(is_feasible(p, opt));
}

TEST(FlexibilityGain, GroupsNeverLoseRevenue)
{
    boost::random::mt19937_64 rng{6'2};
    boost::random::uniform_int_distribution<std::uint64_t> u{0, 1'000};
    for (int i = 0; i < 300; ++i)
    {
        const auto plain = random_instance(rng, {10, false, (i % 2) == 1, 6});
        PackingProblem grouped = plain;
        grouped.candidates.clear();
        for (const auto& v : plain.candidates)
        {
            auto original = v;
            original.option_id = "orig";
            original.group_id = v.tx_id;
            grouped.candidates.push_back(original);
            auto alt = original;
            alt.option_id = "alt";
            alt.blobs = 1 + static_cast<std::uint32_t>(u(rng) % 6);
            alt.revenue = u(rng) * 10;
            grouped.candidates.push_back(alt);
        }
        EXPECT_GE(optimal_pack_subset(grouped).total_revenue, optimal_pack(plain).total_revenue);
    }
}

TEST(FlexibilityGain, ZeroRevenueOptionIsDegenerate)
{
    boost::random::mt19937_64 rng{99};
    for (int i = 0; i < 200; ++i)
    {
        const auto plain = random_instance(rng, {10, false, false, 6});
        PackingProblem grouped = plain;
        grouped.candidates.clear();
        for (const auto& v : plain.candidates)
        {
            auto original = v;
            original.option_id = "orig";
            original.group_id = v.tx_id;
            grouped.candidates.push_back(original);
            auto zero = original;
            zero.option_id = "zero";
            zero.revenue = 0;
            grouped.candidates.push_back(zero);
        }
        EXPECT_EQ(optimal_pack_subset(grouped).total_revenue, optimal_pack(plain).total_revenue);
        EXPECT_EQ(optimal_pack(grouped).total_revenue, optimal_pack(plain).total_revenue);
    }
}

TEST(OptimalPack, DeterministicTieBreaking)
{
    const auto p = problem({view("a", 3, 1, 5), view("b", 3, 1, 5), view("c", 3, 1, 5)});
    const auto r1 = optimal_pack(p);
    auto shuffled = p;
    std::swap(shuffled.candidates[0], shuffled.candidates[2]);
    const auto r2 = optimal_pack(shuffled);
    EXPECT_EQ(chosen_ids(r1), chosen_ids(r2));
    EXPECT_EQ(r1.total_revenue, Wei{10});
}

}  // namespace
}  // namespace blobmarket
