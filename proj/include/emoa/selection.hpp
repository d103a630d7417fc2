#pragma once

/// @file selection.hpp
/// @brief Environmental selections of the simple EMOA.
///
///  - BA: rank P + Q, keep the best mu.
///  - BF: rank P + Q, keep P \ R plus the best k of the family Q + R.
///  - BC: drop R from P, rank (P \ R) + Q, keep P \ R plus the best k children.
///
/// Individuals are identified by position, never by value, so duplicates of
/// one objective vector are distinct members.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "emoa/core.hpp"
#include "emoa/ranking.hpp"

namespace emoa {

enum class SelectionScheme { BA, BF, BC };

std::string_view to_string(SelectionScheme scheme) noexcept;
SelectionScheme parse_selection(std::string_view name);

struct SelectionOutcome {
    Population next_population;
    std::size_t replaced_parent_count = 0; ///< members of R that did not survive
    std::size_t survivors_from_children = 0;
};

SelectionOutcome ba_select(const Population& population, std::span<const Individual> children,
                           std::span<const std::size_t> parents, RankingMethod method, const RankingContext& ctx);

SelectionOutcome bf_select(const Population& population, std::span<const Individual> children,
                           std::span<const std::size_t> parents, RankingMethod method, const RankingContext& ctx);

/// Requires |children| >= |parents|; throws ConfigError otherwise.
SelectionOutcome bc_select(const Population& population, std::span<const Individual> children,
                           std::span<const std::size_t> parents, RankingMethod method, const RankingContext& ctx);

SelectionOutcome environmental_select(SelectionScheme scheme, const Population& population,
                                      std::span<const Individual> children, std::span<const std::size_t> parents,
                                      RankingMethod method, const RankingContext& ctx);

} // namespace emoa
