#pragma once

/// @file ranking.hpp
/// @brief Quality orders over a set of individuals: non-dominated sorting with
/// crowding distance (NS), with hypervolume contribution (SM), SPEA2 fitness (SP)
/// and IBEA additive-epsilon fitness (IB).
///
/// Every method yields a total order, best first. Ties left by the method's own
/// criteria are broken by eval_id ascending.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "emoa/core.hpp"

namespace emoa {

enum class RankingMethod { NS, SM, SP, IB };

std::string_view to_string(RankingMethod method) noexcept;
RankingMethod parse_ranking(std::string_view name);

using Front = std::vector<std::size_t>;

struct RankKey {
    std::size_t front = 0; ///< non-domination level (0 for SP and IB)
    double score = 0.0;    ///< crowding, contribution or fitness, in the method's own sense
};

struct RankedSet {
    std::vector<std::size_t> order; ///< permutation of input indices, best first
    std::vector<RankKey> keys;      ///< indexed by input index

    /// position[i] = place of input i in order.
    std::vector<std::size_t> positions() const;
};

struct IbeaConfig {
    double kappa = 0.05;
};

struct RankingContext {
    /// Reference point for SM contributions; computed from the set when absent.
    std::optional<ObjectiveVector> hv_reference;
    IbeaConfig ibea;
};

/// Deb's O(m N^2) sort. Front members are listed in ascending input index.
std::vector<Front> fast_nondominated_sort(std::span<const ObjectiveVector> points);

/// Crowding distance of each member of a front, normalised per objective by the
/// front's range, with the nearest strictly smaller and larger values as neighbours.
/// Members at either extreme get +infinity; fronts of size <= 2 are all boundary.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Exclusive hypervolume contribution of each point of a mutually non-dominated
/// 2-D front. Points not strictly dominating ref contribute 0.
std::vector<double> hv_contribution_2d(std::span<const ObjectiveVector> front, const ObjectiveVector& ref);

/// Worst point of the set pushed out by 10% of the set's range in every objective
/// (by 1 when the range is zero).
ObjectiveVector set_relative_reference(std::span<const ObjectiveVector> points);

/// SPEA2 fitness R(i) + D(i); lower is better.
std::vector<double> spea2_fitness(std::span<const ObjectiveVector> points);

/// IBEA fitness with the additive epsilon indicator on min-max normalised
/// objectives; higher is better.
std::vector<double> ibea_fitness(std::span<const ObjectiveVector> points, const IbeaConfig& cfg);

RankedSet rank_ns(std::span<const Individual> set);
RankedSet rank_sm(std::span<const Individual> set, const ObjectiveVector& ref);
RankedSet rank_sp(std::span<const Individual> set);
RankedSet rank_ib(std::span<const Individual> set, const IbeaConfig& cfg);

RankedSet rank(RankingMethod method, std::span<const Individual> set, const RankingContext& ctx = {});

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> set);

} // namespace emoa
