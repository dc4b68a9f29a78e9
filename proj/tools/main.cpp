// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: simulate, classify, private-share, generate.

#include <blobmarket/demand.hpp>
#include <blobmarket/ingest.hpp>
#include <blobmarket/scenario.hpp>
#include <blobmarket/simulator.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace blobmarket;

namespace {

Scenario load_scenario(const std::string& name_or_path)
{
    if (fs::is_regular_file(name_or_path))
    {
        std::ifstream in{name_or_path};
        return scenario_from_json(nlohmann::json::parse(in));
    }
    return preset(name_or_path);
}

std::ifstream open_input(const std::string& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw std::runtime_error{"cannot open " + path};
    return in;
}

std::ofstream open_output(const fs::path& path)
{
    std::ofstream out{path, std::ios::binary};
    if (!out)
        throw std::runtime_error{"cannot write " + path.string()};
    return out;
}

void report_issues(const std::string& file, const std::vector<CsvIssue>& issues)
{
    for (const auto& i : issues)
        std::cerr << file << ":" << i.line << ": " << i.message << '\n';
}

Trace load_trace(const std::string& blocks_path, const std::string& mempool_path,
    std::size_t& issue_count)
{
    auto blocks_in = open_input(blocks_path);
    auto blocks = read_blocks_csv(blocks_in);
    auto mempool_in = open_input(mempool_path);
    auto mempool = read_transactions_csv(mempool_in);
    report_issues(blocks_path, blocks.issues);
    report_issues(mempool_path, mempool.issues);
    issue_count = blocks.issues.size() + mempool.issues.size();
    return Trace{std::move(blocks.blocks), std::move(mempool.transactions)};
}

std::int64_t seconds_to_ms(double s)
{
    return static_cast<std::int64_t>(std::llround(s * 1000.0));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Blob fee market simulator and packing auditor"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run a scenario and export metrics and trace");
    std::string sim_scenario;
    std::optional<std::uint64_t> sim_seed, sim_slots;
    std::string sim_out;
    bool shadow = false;
    sim->add_option("--scenario", sim_scenario, "Scenario JSON file or preset name")->required();
    sim->add_option("--seed", sim_seed, "Override the scenario seed");
    sim->add_option("--slots", sim_slots, "Override the horizon in slots")->check(CLI::PositiveNumber);
    sim->add_option("--out", sim_out, "Output directory")->required();
    sim->add_flag("--shadow-pricing", shadow, "Pack greedily and optimally every slot");

    // classify
    auto* cls = app.add_subcommand("classify", "Classify the blocks of a recorded trace");
    std::string cls_blocks, cls_mempool, cls_out;
    double min_lead = 4, max_age = 120;
    cls->add_option("--blocks", cls_blocks, "Blocks CSV")->required();
    cls->add_option("--mempool", cls_mempool, "Mempool transaction CSV")->required();
    cls->add_option("--min-lead", min_lead, "Seconds before the block a tx must be seen")
        ->capture_default_str();
    cls->add_option("--max-age", max_age, "Oldest sighting still eligible, in seconds")
        ->capture_default_str();
    cls->add_option("--out", cls_out, "Output directory")->required();

    // private-share
    auto* ps = app.add_subcommand("private-share", "Daily share of privately submitted blob txs");
    std::string ps_blocks, ps_mempool, ps_out;
    std::optional<std::string> ps_sender;
    ps->add_option("--blocks", ps_blocks, "Blocks CSV")->required();
    ps->add_option("--mempool", ps_mempool, "Mempool transaction CSV")->required();
    ps->add_option("--sender", ps_sender, "Restrict to one sender label");
    ps->add_option("--out", ps_out, "Output directory (default: daily series on stdout)");

    // generate
    auto* gen = app.add_subcommand("generate", "Export a scenario's arrival stream as CSV");
    std::string gen_scenario, gen_out;
    std::optional<std::uint64_t> gen_seed, gen_slots;
    gen->add_option("--scenario", gen_scenario, "Scenario JSON file or preset name")->required();
    gen->add_option("--seed", gen_seed, "Override the scenario seed");
    gen->add_option("--slots", gen_slots, "Override the horizon in slots")->check(CLI::PositiveNumber);
    gen->add_option("--out", gen_out, "Transaction CSV path (default: stdout)");

    // preset
    auto* pre = app.add_subcommand("preset", "Print a built-in scenario as JSON");
    std::string pre_name;
    pre->add_option("name", pre_name, "calm, blobscriptions or layerzero")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*sim)
        {
            Scenario s = load_scenario(sim_scenario);
            if (sim_seed)
                s.seed = *sim_seed;
            if (sim_slots)
                s.horizon_slots = *sim_slots;
            const RunOptions options{shadow};
            const auto result = run(s, options);
            write_run(sim_out, s, options, result);
            std::cout << summary_json(s, options, result)["report"].dump(2) << '\n';
        }
        else if (*cls)
        {
            std::size_t issues = 0;
            const Trace trace = load_trace(cls_blocks, cls_mempool, issues);
            EligibilityWindow window{seconds_to_ms(min_lead), seconds_to_ms(max_age)};
            const auto result = classify_trace(trace, window, ProtocolParams{});
            fs::create_directories(cls_out);
            {
                auto out = open_output(fs::path{cls_out} / "classification.csv");
                write_classification_csv(out, result);
            }
            {
                auto out = open_output(fs::path{cls_out} / "delays.csv");
                write_delays_csv(out, result);
            }
            nlohmann::json summary = summarize(result).to_json();
            summary["parse_issues"] = issues;
            summary["malformed_blocks"] = result.malformed_blocks;
            summary["unresolved_refs"] = result.unresolved_refs;
            summary["clock_skew"] = result.clock_skew;
            {
                auto out = open_output(fs::path{cls_out} / "summary.json");
                out << summary.dump(2) << '\n';
            }
            std::cout << summary.dump(2) << '\n';
        }
        else if (*ps)
        {
            std::size_t issues = 0;
            const Trace trace = load_trace(ps_blocks, ps_mempool, issues);
            const auto share = private_share(trace, ps_sender);
            if (ps_out.empty())
            {
                write_private_share_csv(std::cout, share);
            }
            else
            {
                fs::create_directories(ps_out);
                auto daily = open_output(fs::path{ps_out} / "private_share.csv");
                write_private_share_csv(daily, share);
                auto by_sender = open_output(fs::path{ps_out} / "private_share_by_sender.csv");
                write_private_share_by_sender_csv(by_sender, share);
            }
        }
        else if (*gen)
        {
            Scenario s = load_scenario(gen_scenario);
            if (gen_seed)
                s.seed = *gen_seed;
            if (gen_slots)
                s.horizon_slots = *gen_slots;
            const auto txs = generate(s);
            if (gen_out.empty())
            {
                write_transactions_csv(std::cout, txs);
            }
            else
            {
                auto out = open_output(gen_out);
                write_transactions_csv(out, txs);
            }
        }
        else if (*pre)
        {
            std::cout << to_json(preset(pre_name)).dump(2) << '\n';
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
