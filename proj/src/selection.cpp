#include "emoa/selection.hpp"

#include <algorithm>
#include <string>

namespace emoa {

namespace {

void check_parents(const Population& population, std::span<const std::size_t> parents) {
    std::vector<bool> seen(population.size(), false);
    for (std::size_t r : parents) {
        if (r >= population.size()) {
            throw ContractViolation("selection: parent index outside the population");
        }
        if (seen[r]) {
            throw ContractViolation("selection: parent indices must be distinct");
        }
        seen[r] = true;
    }
}

std::vector<bool> parent_mask(const Population& population, std::span<const std::size_t> parents) {
    std::vector<bool> mask(population.size(), false);
    for (std::size_t r : parents) {
        mask[r] = true;
    }
    return mask;
}

// Picks the `count` best-ranked entries among `candidates` (indices into the ranked union).
std::vector<std::size_t> best_of(std::vector<std::size_t> candidates, const std::vector<std::size_t>& position,
                                 std::size_t count) {
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return position[a] < position[b]; });
    candidates.resize(std::min(count, candidates.size()));
    return candidates;
}

} // namespace

std::string_view to_string(SelectionScheme scheme) noexcept {
    switch (scheme) {
    case SelectionScheme::BA: return "BA";
    case SelectionScheme::BF: return "BF";
    case SelectionScheme::BC: return "BC";
    }
    return "?";
}

SelectionScheme parse_selection(std::string_view name) {
    for (auto s : {SelectionScheme::BA, SelectionScheme::BF, SelectionScheme::BC}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw ConfigError("unknown environmental selection '" + std::string(name) + "'");
}

SelectionOutcome ba_select(const Population& population, std::span<const Individual> children,
                           std::span<const std::size_t> parents, RankingMethod method, const RankingContext& ctx) {
    check_parents(population, parents);
    const std::size_t mu = population.size();
    Population all(population);
    all.insert(all.end(), children.begin(), children.end());
    const RankedSet ranked = rank(method, all, ctx);

    SelectionOutcome out;
    out.next_population.reserve(mu);
    std::vector<bool> survived(all.size(), false);
    for (std::size_t p = 0; p < mu; ++p) {
        const std::size_t i = ranked.order[p];
        survived[i] = true;
        out.next_population.push_back(all[i]);
        if (i >= mu) {
            ++out.survivors_from_children;
        }
    }
    for (std::size_t r : parents) {
        if (!survived[r]) {
            ++out.replaced_parent_count;
        }
    }
    return out;
}

SelectionOutcome bf_select(const Population& population, std::span<const Individual> children,
                           std::span<const std::size_t> parents, RankingMethod method, const RankingContext& ctx) {
    check_parents(population, parents);
    const std::size_t mu = population.size();
    const std::size_t k = parents.size();
    Population all(population);
    all.insert(all.end(), children.begin(), children.end());
    const auto position = rank(method, all, ctx).positions();

    std::vector<std::size_t> family(parents.begin(), parents.end());
    for (std::size_t c = 0; c < children.size(); ++c) {
        family.push_back(mu + c);
    }
    const auto chosen = best_of(std::move(family), position, k);

    const auto is_parent = parent_mask(population, parents);
    SelectionOutcome out;
    out.next_population.reserve(mu);
    for (std::size_t i = 0; i < mu; ++i) {
        if (!is_parent[i]) {
            out.next_population.push_back(population[i]);
        }
    }
    std::size_t parents_kept = 0;
    for (std::size_t i : chosen) {
        out.next_population.push_back(all[i]);
        if (i >= mu) {
            ++out.survivors_from_children;
        } else {
            ++parents_kept;
        }
    }
    out.replaced_parent_count = k - parents_kept;
    return out;
}

SelectionOutcome bc_select(const Population& population, std::span<const Individual> children,
                           std::span<const std::size_t> parents, RankingMethod method, const RankingContext& ctx) {
    check_parents(population, parents);
    const std::size_t k = parents.size();
    if (children.size() < k) {
        throw ConfigError("BC selection needs at least k children (lambda >= k)");
    }
    const auto is_parent = parent_mask(population, parents);
    Population pool;
    pool.reserve(population.size() - k + children.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
        if (!is_parent[i]) {
            pool.push_back(population[i]);
        }
    }
    const std::size_t remaining = pool.size();
    pool.insert(pool.end(), children.begin(), children.end());
    const auto position = rank(method, pool, ctx).positions();

    std::vector<std::size_t> brood(children.size());
    for (std::size_t c = 0; c < children.size(); ++c) {
        brood[c] = remaining + c;
    }
    const auto chosen = best_of(std::move(brood), position, k);

    SelectionOutcome out;
    out.next_population.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(remaining));
    for (std::size_t i : chosen) {
        out.next_population.push_back(pool[i]);
    }
    out.replaced_parent_count = k;
    out.survivors_from_children = k;
    return out;
}

SelectionOutcome environmental_select(SelectionScheme scheme, const Population& population,
                                      std::span<const Individual> children, std::span<const std::size_t> parents,
                                      RankingMethod method, const RankingContext& ctx) {
    switch (scheme) {
    case SelectionScheme::BA: return ba_select(population, children, parents, method, ctx);
    case SelectionScheme::BF: return bf_select(population, children, parents, method, ctx);
    case SelectionScheme::BC: return bc_select(population, children, parents, method, ctx);
    }
    throw ConfigError("unknown environmental selection");
}

} // namespace emoa
