#pragma once

/// @file engine.hpp
/// @brief The simple EMOA main loop: random parent selection, brood generation
/// from one parent set, environmental selection. Every evaluation is offered to
/// the run's unbounded archive as it happens.
///
/// A second, generational loop backs the presets that stand in for the original
/// EMOAs (NSGA-II, SPEA2, SMS-EMOA, IBEA): binary-tournament mating, one SBX pair
/// per two children, then best-of-all selection over mu + mu.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emoa/core.hpp"
#include "emoa/indicators.hpp"
#include "emoa/problems.hpp"
#include "emoa/ranking.hpp"
#include "emoa/selection.hpp"
#include "emoa/variation.hpp"

namespace emoa {

enum class LoopKind { Simple, Generational };

std::string_view to_string(LoopKind loop) noexcept;

/// floor(100 ln n)
std::size_t default_population_size(std::size_t n);

struct RunConfig {
    SelectionScheme selection = SelectionScheme::BC;
    CrossoverConfig crossover;
    RankingMethod ranking = RankingMethod::NS;
    LoopKind loop = LoopKind::Simple;
    std::size_t mu = 0;
    std::size_t lambda = 0;
    std::uint64_t max_evals = 0;
    std::uint64_t seed = 0;
    std::string problem_id;
    bool record_population_indicator = false;
    std::size_t record_interval = 0; ///< 0 means one sample per iteration (lambda evaluations)
    IbeaConfig ibea;

    /// mu = floor(100 ln n), lambda = 10 n, max_evals = 10^4 n, standard operator parameters.
    static RunConfig standard(std::size_t n, SelectionScheme selection, CrossoverMethod crossover,
                              RankingMethod ranking);

    /// Original-EMOA stand-in: generational loop, SBX + PM, lambda = mu rounded up to even.
    static RunConfig generational(std::size_t n, RankingMethod ranking);

    std::size_t effective_record_interval() const noexcept { return record_interval ? record_interval : lambda; }
    void validate() const;
};

struct TraceSample {
    std::uint64_t evals = 0;
    double archive_indicator = 0.0;
    double archive_hv = 0.0; ///< normalised hypervolume of the archive, reference (1, 1)
    std::size_t archive_size = 0;
    std::optional<double> population_indicator;
    std::uint64_t cumulative_replacements = 0;
    std::uint64_t iteration = 0;
};

struct RunRecord {
    RunConfig config;
    std::size_t dimension = 0;
    std::vector<TraceSample> trace;
    std::vector<ArchiveEntry> final_archive;
    std::uint64_t evaluations = 0;
    std::uint64_t iterations = 0;
    double wall_seconds = 0.0;

    IndicatorTrace indicator_trace() const;
};

struct RunHooks {
    /// Sees every evaluated individual, in evaluation order.
    std::function<void(const Individual&)> on_evaluation;
};

/// mu individuals uniform in the problem bounds, each evaluated once.
Population init_population(Evaluator& evaluator, std::size_t mu, RandomSource& rng);

/// k distinct indices of [0, mu), uniform without replacement.
std::vector<std::size_t> select_parents(std::size_t mu, std::size_t k, RandomSource& rng);

/// Runs until no further full iteration fits into max_evals. Deterministic in
/// (config, problem, ctx); wall_seconds is the only field that varies.
RunRecord run(const RunConfig& config, const BiObjectiveProblem& problem, const IndicatorContext& ctx,
              const RunHooks& hooks = {});

} // namespace emoa
