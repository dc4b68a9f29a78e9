// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/demand.hpp>
#include <blobmarket/scenario.hpp>

#include <gtest/gtest.h>

namespace blobmarket {
namespace {

Scenario minimal()
{
    Scenario s;
    SenderStrategy st;
    st.sender = "l2";
    s.strategies.push_back(st);
    s.builders.push_back({"b", PackingStrategy::Optimal, 0.0, 1.0});
    return s;
}

TEST(Scenario, MinimalIsValid)
{
    EXPECT_NO_THROW(minimal().validate());
}

TEST(Scenario, RejectsZeroWeightMass)
{
    auto s = minimal();
    s.builders[0].selection_weight = 0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s.builders.clear();
    EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Scenario, RejectsBadFields)
{
    auto s = minimal();
    s.builders[0].blob_aversion_probability = 1.5;
    EXPECT_THROW(s.validate(), std::invalid_argument);

    s = minimal();
    s.strategies.push_back(s.strategies[0]);
    EXPECT_THROW(s.validate(), std::invalid_argument);  // duplicate sender

    s = minimal();
    s.strategies[0].privacy = true;
    s.strategies[0].private_builder = "nobody";
    EXPECT_THROW(s.validate(), std::invalid_argument);

    s = minimal();
    s.strategies[0].submit_interval = 0;
    EXPECT_THROW(s.validate(), std::invalid_argument);

    s = minimal();
    s.strategies[0].blob_count_policy.blobs = 7;
    EXPECT_THROW(s.validate(), std::invalid_argument);

    s = minimal();
    s.reserved_non_blob_gas = s.params.block_gas_limit + 1;
    EXPECT_THROW(s.validate(), std::invalid_argument);

    s = minimal();
    s.spikes.push_back(SpikeEvent{0, 0});
    EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Scenario, SlotTimes)
{
    const auto s = minimal();
    EXPECT_EQ(s.slot_ms(), 12'000);
    EXPECT_EQ(s.slot_time_ms(0), s.genesis_ms());
    EXPECT_EQ(s.slot_time_ms(10), s.genesis_ms() + 120'000);
}

TEST(ScenarioJson, PresetsRoundTrip)
{
    for (const auto name : preset_names())
    {
        const auto j = to_json(preset(name));
        EXPECT_EQ(to_json(scenario_from_json(j)), j) << name;
    }
}

TEST(ScenarioJson, DefaultsAndWeiForms)
{
    const auto j = nlohmann::json::parse(R"({
        "seed": 9,
        "horizon_slots": 50,
        "window": {"min_lead": 2, "max_age": 60},
        "strategies": [{"sender": "x", "submit_interval": 24,
                        "priority_fee_policy": {"kind": "fixed", "wei": "123456789012345678901"},
                        "max_fee_per_gas": "200000000000000000000000"}],
        "builders": [{"name": "only", "strategy": "subset-optimal"}]
    })");
    const auto s = scenario_from_json(j);
    EXPECT_EQ(s.seed, 9u);
    EXPECT_EQ(s.horizon_slots, 50u);
    EXPECT_EQ(s.window.min_lead_ms, 2'000);
    EXPECT_EQ(s.window.max_age_ms, 60'000);
    EXPECT_EQ(s.strategies[0].priority_fee_policy.value.str(), "123456789012345678901");
    EXPECT_EQ(s.builders[0].strategy, PackingStrategy::SubsetOptimal);
    EXPECT_EQ(s.params, ProtocolParams{});
    EXPECT_EQ(s.reserved_non_blob_gas, 10'000'000u);
}

TEST(ScenarioJson, RejectsUnknownKinds)
{
    auto j = to_json(minimal());
    j["strategies"][0]["blob_count_policy"] = {{"kind", "lognormal"}};
    EXPECT_THROW(scenario_from_json(j), std::invalid_argument);
    j = to_json(minimal());
    j["builders"][0]["strategy"] = "clever";
    EXPECT_THROW(scenario_from_json(j), std::invalid_argument);
    j = to_json(minimal());
    j["initial_base_fee_per_gas"] = -3;
    EXPECT_THROW(scenario_from_json(j), std::invalid_argument);
}

TEST(PackingStrategy, Names)
{
    for (auto s : {PackingStrategy::Greedy, PackingStrategy::Optimal, PackingStrategy::SubsetOptimal})
        EXPECT_EQ(parse_packing_strategy(to_string(s)), s);
    EXPECT_EQ(to_string(PackingStrategy::SubsetOptimal), "subset-optimal");
}

}  // namespace
}  // namespace blobmarket
