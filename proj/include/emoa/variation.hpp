#pragma once

/// @file variation.hpp
/// @brief Real-coded crossover operators (SBX with polynomial mutation, BLX-alpha,
/// PCX, SPX, REX), clamping bound repair, and brood generation from one parent set.

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "emoa/core.hpp"
#include "emoa/problems.hpp"

namespace emoa {

enum class CrossoverMethod { SBX, BLX, PCX, SPX, REX };

std::string_view to_string(CrossoverMethod method) noexcept;
/// Accepts the upper-case names; throws ConfigError otherwise.
CrossoverMethod parse_crossover(std::string_view name);

/// Operator parameters. Use for_method() to get the standard settings for a
/// dimension; individual fields may be overridden afterwards.
struct CrossoverConfig {
    CrossoverMethod method = CrossoverMethod::SPX;
    double eta_c = 20.0;
    double eta_m = 20.0;
    double p_c = 0.9;
    double p_m = 0.0;
    double alpha = 0.5;
    double sigma_zeta_sq = 0.1;
    double sigma_eta_sq = 0.1;
    double epsilon = 0.0;
    double sigma_sq = 0.0;
    std::size_t k = 2;

    /// SBX/BLX: k = 2. PCX/SPX/REX: k = n + 1, epsilon = sqrt(n + 2), sigma^2 = 1/(k - 1).
    /// p_m = 1/n.
    static CrossoverConfig for_method(CrossoverMethod method, std::size_t n);

    void validate() const;
};

void clamp_to_bounds(std::span<double> x, const Bounds& bounds);

/// SBX spread factor for a uniform draw u in [0, 1).
double sbx_spread_factor(double u, double eta_c) noexcept;

/// Per-variable SBX: with probability p_c the pair is spread by beta, otherwise copied.
std::pair<DecisionVector, DecisionVector> sbx_pair(std::span<const double> p1, std::span<const double> p2,
                                                   const CrossoverConfig& cfg, const Bounds& bounds,
                                                   RandomSource& rng);

/// Bounded polynomial mutation; each variable mutates with probability p_m. Bounds must be finite.
DecisionVector polynomial_mutation(std::span<const double> x, const Bounds& bounds,
                                   const CrossoverConfig& cfg, RandomSource& rng);

/// Deterministic part of polynomial mutation for one variable given the draw u.
double polynomial_mutation_step(double x, double lower, double upper, double u, double eta_m) noexcept;

DecisionVector blx_alpha(std::span<const double> p1, std::span<const double> p2,
                         const CrossoverConfig& cfg, const Bounds& bounds, RandomSource& rng);

/// Parent-centric crossover around parents[center].
DecisionVector pcx(std::span<const DecisionVector> parents, std::size_t center, const CrossoverConfig& cfg,
                   const Bounds& bounds, RandomSource& rng);

/// Uniform sample from the simplex of the parents expanded by epsilon about their mean.
DecisionVector spx(std::span<const DecisionVector> parents, const CrossoverConfig& cfg, const Bounds& bounds,
                   RandomSource& rng);

/// Parent mean plus a zero-mean Normal combination of the parent deviations.
DecisionVector rex(std::span<const DecisionVector> parents, const CrossoverConfig& cfg, const Bounds& bounds,
                   RandomSource& rng);

/// Produces lambda evaluated children from the same parent set. SBX runs lambda/2
/// times and mutates both children of each pair; PCX rotates its center over the
/// parents child by child.
std::vector<Individual> generate_children(std::span<const Individual> parents, std::size_t lambda,
                                          const CrossoverConfig& cfg, Evaluator& evaluator, RandomSource& rng);

} // namespace emoa
