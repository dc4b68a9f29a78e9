// blobmarket: blob fee market simulator and packing auditor
// Copyright 2026 The blobmarket Authors.
// SPDX-License-Identifier: Apache-2.0

#include <blobmarket/packing.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace blobmarket {

void PackingProblem::validate() const
{
    if (blob_capacity > kMaxPackingCapacity)
        throw std::invalid_argument{"blob capacity too large"};
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& v : candidates)
    {
        if (v.blobs < 1 || v.blobs > kMaxBlobsPerTx)
            throw std::invalid_argument{"candidate " + v.tx_id + ": blob count must be in 1..6"};
        if (!seen.emplace(v.tx_id, v.option_id).second)
            throw std::invalid_argument{"duplicate candidate " + v.tx_id + "/" + v.option_id};
    }
}

bool PackingResult::includes(std::string_view tx_id) const
{
    return std::any_of(
        chosen.begin(), chosen.end(), [&](const auto& v) { return v.tx_id == tx_id; });
}

bool packs_before(const BuilderRevenueView& a, const BuilderRevenueView& b)
{
    if (a.revenue != b.revenue)
        return a.revenue > b.revenue;
    if (a.blobs != b.blobs)
        return a.blobs < b.blobs;
    if (a.gas != b.gas)
        return a.gas < b.gas;
    if (a.tx_id != b.tx_id)
        return a.tx_id < b.tx_id;
    return a.option_id < b.option_id;
}

namespace {

std::vector<std::size_t> sorted_order(const std::vector<BuilderRevenueView>& views)
{
    std::vector<std::size_t> order(views.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
        [&](std::size_t a, std::size_t b) { return packs_before(views[a], views[b]); });
    return order;
}

PackingResult make_result(const std::vector<BuilderRevenueView>& views,
    const std::vector<std::size_t>& picked)
{
    PackingResult r;
    for (const auto i : picked)
    {
        r.chosen.push_back(views[i]);
        r.total_blobs += views[i].blobs;
        r.total_gas += views[i].gas;
        r.total_revenue += views[i].revenue;
    }
    return r;
}

/// A budget that no capacity-feasible selection can reach is no budget.
std::optional<std::uint64_t> effective_budget(const PackingProblem& p)
{
    if (!p.gas_budget)
        return std::nullopt;
    std::uint64_t max_gas = 0;
    for (const auto& v : p.candidates)
        max_gas = std::max(max_gas, v.gas);
    // max_gas * capacity <= budget, without overflow.
    if (max_gas <= *p.gas_budget / std::max<std::uint32_t>(p.blob_capacity, 1))
        return std::nullopt;
    return p.gas_budget;
}

/// Drops candidates that some optimal solution provably avoids.
///
/// Walking candidates in packs_before() order, x (b blobs) is dominated by an
/// earlier y with the same blob count and no more gas. If a dominator shares
/// x's group, or dominators span at least capacity - b + 1 other groups, one
/// of them is always free to replace x: the rest of any solution holds at
/// most capacity - b blobs and therefore that many groups.
std::vector<std::size_t> prune_dominated(const std::vector<BuilderRevenueView>& views,
    const std::vector<std::size_t>& order, std::uint32_t capacity, bool gas_matters)
{
    std::vector<std::size_t> kept;
    std::vector<std::vector<std::size_t>> by_class(kMaxBlobsPerTx + 1);
    for (const auto i : order)
    {
        const auto& x = views[i];
        if (x.blobs > capacity)
            continue;
        const std::uint32_t needed = capacity - x.blobs + 1;
        std::unordered_set<std::string_view> groups;
        bool dominated = false;
        for (const auto j : by_class[x.blobs])
        {
            const auto& y = views[j];
            if (gas_matters && y.gas > x.gas)
                continue;
            if (y.exclusion_key() == x.exclusion_key())
            {
                dominated = true;
                break;
            }
            groups.insert(y.exclusion_key());
            if (groups.size() >= needed)
            {
                dominated = true;
                break;
            }
        }
        // Dominated items still count as dominators for later ones.
        by_class[x.blobs].push_back(i);
        if (!dominated)
            kept.push_back(i);
    }
    return kept;
}

class BranchAndBound
{
public:
    BranchAndBound(const std::vector<BuilderRevenueView>& views, std::vector<std::size_t> items,
        std::uint32_t capacity, std::optional<std::uint64_t> budget)
        : views_{views}, items_{std::move(items)}, capacity_{capacity}, budget_{budget}
    {
        // Suffix index of the best revenue-per-blob item, for the bound.
        best_density_.assign(items_.size() + 1, npos);
        for (std::size_t k = items_.size(); k-- > 0;)
        {
            const std::size_t next = best_density_[k + 1];
            best_density_[k] = (next == npos || denser(items_[k], next)) ? items_[k] : next;
        }
    }

    std::vector<std::size_t> solve()
    {
        best_revenue_ = Wei{0};
        best_.clear();
        current_.clear();
        search(0, capacity_, budget_.value_or(0), Wei{0});
        return best_;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool denser(std::size_t a, std::size_t b) const
    {
        // rev_a / blobs_a > rev_b / blobs_b
        return views_[a].revenue * views_[b].blobs > views_[b].revenue * views_[a].blobs;
    }

    bool cannot_improve(std::size_t k, std::uint32_t blobs_left, const Wei& revenue) const
    {
        const std::size_t d = best_density_[k];
        if (d == npos || blobs_left == 0)
            return revenue <= best_revenue_;
        // revenue + blobs_left * rev_d / blobs_d <= best
        return revenue.value() * views_[d].blobs + views_[d].revenue.value() * blobs_left <=
               best_revenue_.value() * views_[d].blobs;
    }

    bool group_used(const BuilderRevenueView& v) const
    {
        return std::any_of(current_.begin(), current_.end(),
            [&](std::size_t i) { return views_[i].exclusion_key() == v.exclusion_key(); });
    }

    void search(std::size_t k, std::uint32_t blobs_left, std::uint64_t gas_left, const Wei& revenue)
    {
        if (revenue > best_revenue_)
        {
            best_revenue_ = revenue;
            best_ = current_;
        }
        if (k == items_.size() || cannot_improve(k, blobs_left, revenue))
            return;

        const auto& v = views_[items_[k]];
        const bool fits = v.blobs <= blobs_left && (!budget_ || v.gas <= gas_left);
        if (fits && !group_used(v))
        {
            current_.push_back(items_[k]);
            search(k + 1, blobs_left - v.blobs, budget_ ? gas_left - v.gas : 0, revenue + v.revenue);
            current_.pop_back();
        }
        search(k + 1, blobs_left, gas_left, revenue);
    }

    const std::vector<BuilderRevenueView>& views_;
    std::vector<std::size_t> items_;
    std::uint32_t capacity_;
    std::optional<std::uint64_t> budget_;
    std::vector<std::size_t> best_density_;
    Wei best_revenue_;
    std::vector<std::size_t> best_;
    std::vector<std::size_t> current_;
};

}  // namespace

PackingResult greedy_pack(const PackingProblem& problem)
{
    problem.validate();
    const auto& views = problem.candidates;
    std::vector<std::size_t> picked;
    std::unordered_set<std::string_view> used;
    std::uint32_t blobs = 0;
    std::uint64_t gas = 0;
    for (const auto i : sorted_order(views))
    {
        const auto& v = views[i];
        if (blobs + v.blobs > problem.blob_capacity)
            continue;
        if (problem.gas_budget && gas + v.gas > *problem.gas_budget)
            continue;
        if (used.contains(v.exclusion_key()))
            continue;
        used.insert(v.exclusion_key());
        blobs += v.blobs;
        gas += v.gas;
        picked.push_back(i);
    }
    return make_result(views, picked);
}

PackingResult optimal_pack(const PackingProblem& problem)
{
    problem.validate();
    const auto budget = effective_budget(problem);
    const auto order = sorted_order(problem.candidates);
    auto kept = prune_dominated(problem.candidates, order, problem.blob_capacity, budget.has_value());
    BranchAndBound bnb{problem.candidates, std::move(kept), problem.blob_capacity, budget};
    auto picked = bnb.solve();
    std::sort(picked.begin(), picked.end(), [&](std::size_t a, std::size_t b) {
        return packs_before(problem.candidates[a], problem.candidates[b]);
    });
    return make_result(problem.candidates, picked);
}

PackingResult optimal_pack_subset(const PackingProblem& problem)
{
    problem.validate();
    const auto& views = problem.candidates;
    const auto budget = effective_budget(problem);
    const std::uint32_t cap = problem.blob_capacity;

    // Groups in order of their best option; options within a group in order.
    std::vector<std::vector<std::size_t>> groups;
    std::unordered_map<std::string_view, std::size_t> group_of;
    for (const auto i : sorted_order(views))
    {
        auto [it, inserted] = group_of.try_emplace(views[i].exclusion_key(), groups.size());
        if (inserted)
            groups.emplace_back();
        groups[it->second].push_back(i);
    }

    struct Label
    {
        Wei revenue;
        std::uint64_t gas;
        std::size_t parent;  // label index, npos for the root
        std::size_t view;    // view added to reach this label
    };
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<Label> arena{{Wei{0}, 0, npos, npos}};
    // frontier[c]: non-dominated labels using exactly c blobs.
    std::vector<std::vector<std::size_t>> frontier(cap + 1);
    frontier[0].push_back(0);

    auto insert_label = [&](std::vector<std::size_t>& slot, Label label) {
        for (const auto idx : slot)
        {
            const auto& other = arena[idx];
            if (other.revenue >= label.revenue && (!budget || other.gas <= label.gas))
                return;
        }
        std::erase_if(slot, [&](std::size_t idx) {
            const auto& other = arena[idx];
            return label.revenue >= other.revenue && (!budget || label.gas <= other.gas);
        });
        slot.push_back(arena.size());
        arena.push_back(std::move(label));
    };

    for (const auto& group : groups)
    {
        auto next = frontier;
        for (std::uint32_t c = 0; c <= cap; ++c)
        {
            for (const auto idx : frontier[c])
            {
                for (const auto vi : group)
                {
                    const auto& v = views[vi];
                    if (c + v.blobs > cap)
                        continue;
                    const std::uint64_t gas = arena[idx].gas + v.gas;
                    if (budget && gas > *budget)
                        continue;
                    insert_label(next[c + v.blobs], Label{arena[idx].revenue + v.revenue, gas, idx, vi});
                }
            }
        }
        frontier = std::move(next);
    }

    // Best revenue; ties go to fewer blobs, then less gas, then earlier label.
    std::size_t best = 0;
    std::uint32_t best_blobs = 0;
    for (std::uint32_t c = 0; c <= cap; ++c)
    {
        for (const auto idx : frontier[c])
        {
            const auto& l = arena[idx];
            const auto& b = arena[best];
            if (l.revenue > b.revenue ||
                (l.revenue == b.revenue && c == best_blobs && l.gas < b.gas))
            {
                best = idx;
                best_blobs = c;
            }
        }
    }

    std::vector<std::size_t> picked;
    for (std::size_t idx = best; arena[idx].parent != npos; idx = arena[idx].parent)
        picked.push_back(arena[idx].view);
    std::sort(picked.begin(), picked.end(),
        [&](std::size_t a, std::size_t b) { return packs_before(views[a], views[b]); });
    return make_result(views, picked);
}

bool is_feasible(const PackingProblem& problem, const PackingResult& result)
{
    std::uint32_t blobs = 0;
    std::uint64_t gas = 0;
    Wei revenue;
    std::unordered_set<std::string> groups;
    for (const auto& v : result.chosen)
    {
        const bool known = std::any_of(problem.candidates.begin(), problem.candidates.end(),
            [&](const auto& c) { return c == v; });
        if (!known || !groups.insert(v.exclusion_key()).second)
            return false;
        blobs += v.blobs;
        gas += v.gas;
        revenue += v.revenue;
    }
    if (blobs > problem.blob_capacity)
        return false;
    if (problem.gas_budget && gas > *problem.gas_budget)
        return false;
    return blobs == result.total_blobs && gas == result.total_gas && revenue == result.total_revenue;
}

std::string_view to_string(Verdict v)
{
    switch (v)
    {
    case Verdict::Optimal:
        return "Optimal";
    case Verdict::Suboptimal:
        return "Suboptimal";
    case Verdict::Unknown:
        return "Unknown";
    case Verdict::OutOfGas:
        return "OutOfGas";
    case Verdict::NoBlobs:
        return "NoBlobs";
    }
    return "?";
}

Verdict parse_verdict(std::string_view name)
{
    for (const auto v : {Verdict::Optimal, Verdict::Suboptimal, Verdict::Unknown,
             Verdict::OutOfGas, Verdict::NoBlobs})
    {
        if (to_string(v) == name)
            return v;
    }
    throw std::invalid_argument{"unknown verdict '" + std::string{name} + "'"};
}

std::optional<Ratio> relative_fee_loss(const Wei& actual_revenue, const Wei& optimal_revenue)
{
    if (actual_revenue > optimal_revenue)
        throw std::invalid_argument{"actual revenue exceeds optimal revenue"};
    if (optimal_revenue.is_zero())
        return std::nullopt;
    const BigInt loss = optimal_revenue.value() - actual_revenue.value();
    return Ratio{loss, optimal_revenue.value()};
}

BlockClassification classify_block(std::span<const IncludedTx> actual,
    std::span<const BlobTx> eligible, std::uint64_t block_gas_limit,
    std::uint64_t non_blob_gas_used, std::uint32_t blob_capacity)
{
    BlockClassification out;
    std::unordered_set<std::string> actual_ids;
    for (const auto& inc : actual)
    {
        const auto opt = inc.tx.option(inc.option_id);
        if (!opt)
            throw std::invalid_argument{
                "included tx " + inc.tx.id + " has no option '" + inc.option_id + "'"};
        if (!actual_ids.insert(inc.tx.id).second)
            throw std::invalid_argument{"tx " + inc.tx.id + " included twice"};
        out.blobs_actual += opt->num_blobs;
        out.actual_revenue += revenue(*opt);
    }
    if (out.blobs_actual == 0)
        return out;
    if (out.blobs_actual > blob_capacity)
        throw std::invalid_argument{"block carries more blobs than capacity"};

    PackingProblem problem;
    problem.blob_capacity = blob_capacity;
    for (const auto& inc : actual)
    {
        auto views = expand_group(inc.tx);
        problem.candidates.insert(problem.candidates.end(), views.begin(), views.end());
    }
    for (const auto& tx : eligible)
    {
        if (actual_ids.contains(tx.id))
            continue;
        actual_ids.insert(tx.id);
        auto views = expand_group(tx);
        problem.candidates.insert(problem.candidates.end(), views.begin(), views.end());
    }

    const auto opt = optimal_pack(problem);
    const auto grd = greedy_pack(problem);
    out.optimal_revenue = opt.total_revenue;
    out.greedy_revenue = grd.total_revenue;
    out.blobs_optimal = opt.total_blobs;
    out.relative_loss = relative_fee_loss(out.actual_revenue, out.optimal_revenue);

    if (non_blob_gas_used > block_gas_limit || opt.total_gas > block_gas_limit - non_blob_gas_used)
        out.verdict = Verdict::OutOfGas;
    else if (out.actual_revenue < out.optimal_revenue)
        out.verdict = Verdict::Suboptimal;
    else if (out.greedy_revenue == out.optimal_revenue)
        out.verdict = Verdict::Unknown;
    else
        out.verdict = Verdict::Optimal;
    return out;
}

InclusionDelay inclusion_delay(const BlobTx& tx, std::int64_t inclusion_time_ms,
    std::uint64_t inclusion_block, std::uint64_t first_possible_block)
{
    if (inclusion_time_ms < tx.first_seen_ms)
        throw std::invalid_argument{"tx " + tx.id + " included before it was first seen"};
    if (first_possible_block > inclusion_block)
        throw std::invalid_argument{"first possible block is after the inclusion block"};
    return {inclusion_time_ms - tx.first_seen_ms,
        static_cast<std::int64_t>(inclusion_block - first_possible_block)};
}

}  // namespace blobmarket
