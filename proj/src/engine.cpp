#include "emoa/engine.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

namespace emoa {

namespace {

// Index of the better of two random members under a precomputed ranking.
std::size_t binary_tournament(const std::vector<std::size_t>& position, RandomSource& rng) {
    const auto pick = rng.sample_without_replacement(position.size(), 2);
    return position[pick[0]] < position[pick[1]] ? pick[0] : pick[1];
}

std::vector<Individual> generational_offspring(const Population& population, const RunConfig& config,
                                               const RankingContext& ranking_ctx, Evaluator& evaluator,
                                               RandomSource& rng) {
    const auto position = rank(config.ranking, population, ranking_ctx).positions();
    const Bounds& bounds = evaluator.problem().bounds();
    std::vector<Individual> children;
    children.reserve(config.lambda);
    while (children.size() < config.lambda) {
        const Individual& a = population[binary_tournament(position, rng)];
        const Individual& b = population[binary_tournament(position, rng)];
        auto [c1, c2] = sbx_pair(a.x, b.x, config.crossover, bounds, rng);
        children.push_back(evaluator.evaluate(polynomial_mutation(c1, bounds, config.crossover, rng)));
        children.push_back(evaluator.evaluate(polynomial_mutation(c2, bounds, config.crossover, rng)));
    }
    return children;
}

} // namespace

std::string_view to_string(LoopKind loop) noexcept {
    return loop == LoopKind::Simple ? "simple" : "generational";
}

std::size_t default_population_size(std::size_t n) {
    if (n < 2) {
        throw ConfigError("population size: dimension must be at least 2");
    }
    return static_cast<std::size_t>(std::floor(100.0 * std::log(static_cast<double>(n))));
}

RunConfig RunConfig::standard(std::size_t n, SelectionScheme selection, CrossoverMethod crossover,
                              RankingMethod ranking) {
    RunConfig cfg;
    cfg.selection = selection;
    cfg.crossover = CrossoverConfig::for_method(crossover, n);
    cfg.ranking = ranking;
    cfg.mu = default_population_size(n);
    cfg.lambda = 10 * n;
    cfg.max_evals = 10000ULL * n;
    return cfg;
}

RunConfig RunConfig::generational(std::size_t n, RankingMethod ranking) {
    RunConfig cfg = standard(n, SelectionScheme::BA, CrossoverMethod::SBX, ranking);
    cfg.loop = LoopKind::Generational;
    cfg.lambda = cfg.mu + cfg.mu % 2;
    return cfg;
}

void RunConfig::validate() const {
    crossover.validate();
    if (mu < 2) {
        throw ConfigError("run config: mu must be at least 2");
    }
    if (lambda == 0) {
        throw ConfigError("run config: lambda must be positive");
    }
    if (loop == LoopKind::Simple && mu < crossover.k) {
        throw ConfigError("run config: mu must be at least k");
    }
    if (loop == LoopKind::Simple && selection == SelectionScheme::BC && lambda < crossover.k) {
        throw ConfigError("run config: BC needs lambda >= k");
    }
    if (crossover.method == CrossoverMethod::SBX && lambda % 2 != 0) {
        throw ConfigError("run config: SBX needs an even lambda");
    }
    if (loop == LoopKind::Generational && crossover.method != CrossoverMethod::SBX) {
        throw ConfigError("run config: the generational loop uses SBX");
    }
    if (max_evals < mu) {
        throw ConfigError("run config: max_evals must be at least mu");
    }
}

IndicatorTrace RunRecord::indicator_trace() const {
    IndicatorTrace t;
    t.dimension = dimension;
    t.samples.reserve(trace.size());
    for (const auto& s : trace) {
        t.samples.emplace_back(s.evals, s.archive_indicator);
    }
    return t;
}

Population init_population(Evaluator& evaluator, std::size_t mu, RandomSource& rng) {
    if (mu == 0) {
        throw ConfigError("init_population: mu must be positive");
    }
    const Bounds& bounds = evaluator.problem().bounds();
    Population population;
    population.reserve(mu);
    for (std::size_t i = 0; i < mu; ++i) {
        DecisionVector x(bounds.dimension());
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] = rng.uniform(bounds.lower[j], bounds.upper[j]);
        }
        population.push_back(evaluator.evaluate(std::move(x)));
    }
    return population;
}

std::vector<std::size_t> select_parents(std::size_t mu, std::size_t k, RandomSource& rng) {
    if (k > mu) {
        throw ConfigError("select_parents: k exceeds the population size");
    }
    return rng.sample_without_replacement(mu, k);
}

RunRecord run(const RunConfig& config, const BiObjectiveProblem& problem, const IndicatorContext& ctx,
              const RunHooks& hooks) {
    config.validate();
    if (config.crossover.k > problem.dimension() + 1) {
        throw ConfigError("run config: k exceeds n + 1 for this problem");
    }
    const auto started = std::chrono::steady_clock::now();

    RunRecord record;
    record.config = config;
    record.dimension = problem.dimension();

    IndicatorTracker tracker(ctx);
    Evaluator evaluator(problem, [&](const Individual& ind) {
        tracker.offer(ind.f, ind.eval_id);
        if (hooks.on_evaluation) {
            hooks.on_evaluation(ind);
        }
    });
    RandomSource rng(config.seed);
    const RankingContext ranking_ctx{std::nullopt, config.ibea};

    Population population = init_population(evaluator, config.mu, rng);
    std::uint64_t replacements = 0;
    std::uint64_t iteration = 0;
    std::uint64_t last_sample = 0;

    auto sample = [&] {
        TraceSample s;
        s.evals = evaluator.count();
        s.archive_indicator = tracker.value();
        s.archive_hv = tracker.normalized_hv();
        s.archive_size = tracker.archive().size();
        if (config.record_population_indicator) {
            s.population_indicator = icoco_value(objectives_of(population), ctx);
        }
        s.cumulative_replacements = replacements;
        s.iteration = iteration;
        record.trace.push_back(s);
        last_sample = s.evals;
    };
    sample();

    const std::size_t interval = config.effective_record_interval();
    while (evaluator.count() + config.lambda <= config.max_evals) {
        if (config.loop == LoopKind::Simple) {
            const auto parent_idx = select_parents(population.size(), config.crossover.k, rng);
            Population parents;
            parents.reserve(parent_idx.size());
            for (std::size_t i : parent_idx) {
                parents.push_back(population[i]);
            }
            const auto children = generate_children(parents, config.lambda, config.crossover, evaluator, rng);
            auto outcome = environmental_select(config.selection, population, children, parent_idx,
                                                config.ranking, ranking_ctx);
            replacements += outcome.replaced_parent_count;
            population = std::move(outcome.next_population);
        } else {
            const auto children = generational_offspring(population, config, ranking_ctx, evaluator, rng);
            std::vector<std::size_t> everyone(population.size());
            std::iota(everyone.begin(), everyone.end(), std::size_t{0});
            auto outcome = ba_select(population, children, everyone, config.ranking, ranking_ctx);
            replacements += outcome.replaced_parent_count;
            population = std::move(outcome.next_population);
        }
        ++iteration;
        if (evaluator.count() - last_sample >= interval) {
            sample();
        }
    }
    if (last_sample != evaluator.count()) {
        sample();
    }

    record.final_archive = tracker.archive().entries();
    record.evaluations = evaluator.count();
    record.iterations = iteration;
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return record;
}

} // namespace emoa
