#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emoa/engine.hpp"
#include "oracles.hpp"

using namespace emoa;

namespace {

IndicatorContext context_for(const BiObjectiveProblem& p) {
    return IndicatorContext{p.ideal(), p.nadir(), 1.0};
}

RunConfig small_config(std::size_t n, SelectionScheme s, CrossoverMethod c, RankingMethod r, std::uint64_t budget) {
    auto cfg = RunConfig::standard(n, s, c, r);
    cfg.max_evals = budget;
    cfg.seed = 7;
    return cfg;
}

void check_trace_shape(const RunRecord& rec) {
    REQUIRE_FALSE(rec.trace.empty());
    CHECK(rec.trace.front().evals == rec.config.mu);
    CHECK(rec.trace.back().evals == rec.evaluations);
    for (std::size_t i = 1; i < rec.trace.size(); ++i) {
        const auto& a = rec.trace[i - 1];
        const auto& b = rec.trace[i];
        CHECK(a.evals < b.evals);
        CHECK(b.archive_indicator <= a.archive_indicator);
        CHECK(b.archive_hv >= a.archive_hv);
        CHECK(b.cumulative_replacements >= a.cumulative_replacements);
        CHECK(b.iteration > a.iteration);
    }
}

} // namespace

TEST_CASE("population size formula") {
    CHECK(default_population_size(10) == 230);
    CHECK(default_population_size(2) == 69);
    CHECK(default_population_size(20) == 299);
    CHECK(default_population_size(40) == 368);
    CHECK_THROWS_AS(default_population_size(1), ConfigError);
}

TEST_CASE("standard and generational configurations") {
    const auto c = RunConfig::standard(10, SelectionScheme::BC, CrossoverMethod::SPX, RankingMethod::NS);
    CHECK(c.mu == 230);
    CHECK(c.lambda == 100);
    CHECK(c.max_evals == 100000);
    CHECK(c.crossover.k == 11);
    CHECK(c.effective_record_interval() == 100);
    CHECK_NOTHROW(c.validate());
    const auto g = RunConfig::generational(2, RankingMethod::SM);
    CHECK(g.loop == LoopKind::Generational);
    CHECK(g.mu == 69);
    CHECK(g.lambda == 70);
    CHECK(g.crossover.method == CrossoverMethod::SBX);
    CHECK(g.selection == SelectionScheme::BA);
    CHECK_NOTHROW(g.validate());
}

TEST_CASE("validate rejects inconsistent configurations") {
    auto c = RunConfig::standard(10, SelectionScheme::BC, CrossoverMethod::SPX, RankingMethod::NS);
    c.lambda = 5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = RunConfig::standard(10, SelectionScheme::BA, CrossoverMethod::SPX, RankingMethod::NS);
    c.mu = 5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = RunConfig::standard(10, SelectionScheme::BA, CrossoverMethod::SPX, RankingMethod::NS);
    c.max_evals = c.mu - 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = RunConfig::standard(10, SelectionScheme::BA, CrossoverMethod::SBX, RankingMethod::NS);
    c.lambda = 7;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("init_population: mu evaluated members inside the bounds") {
    const auto p = make_problem(0, 10, 1);
    std::size_t observed = 0;
    Evaluator ev(p, [&](const Individual&) { ++observed; });
    RandomSource rng(1);
    const auto pop = init_population(ev, 230, rng);
    CHECK(pop.size() == 230);
    CHECK(ev.count() == 230);
    CHECK(observed == 230);
    for (const auto& ind : pop) {
        CHECK(p.bounds().contains(ind.x));
    }
}

TEST_CASE("select_parents: distinct and uniform") {
    RandomSource rng(2);
    std::vector<double> freq(10, 0.0);
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) {
        const auto r = select_parents(10, 3, rng);
        REQUIRE(r.size() == 3);
        CHECK(r[0] != r[1]);
        CHECK(r[0] != r[2]);
        CHECK(r[1] != r[2]);
        for (auto i : r) {
            freq[i] += 1.0;
        }
    }
    const double se = std::sqrt(0.3 * 0.7 / draws);
    for (double f : freq) {
        CHECK(std::abs(f / draws - 0.3) <= 3.0 * se);
    }
    auto all = select_parents(6, 6, rng);
    std::sort(all.begin(), all.end());
    CHECK(all == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
}

TEST_CASE("budget accounting is exact and never exceeded") {
    const auto p = make_problem(3, 3, 1);
    for (std::uint64_t budget : {138u, 139u, 167u, 168u, 169u, 1000u, 3001u}) {
        const auto cfg = small_config(3, SelectionScheme::BF, CrossoverMethod::REX, RankingMethod::NS, budget);
        const auto rec = run(cfg, p, context_for(p));
        CAPTURE(budget);
        CHECK(rec.evaluations == cfg.mu + cfg.lambda * rec.iterations);
        CHECK(rec.evaluations <= budget);
        CHECK(budget < rec.evaluations + cfg.lambda);
        check_trace_shape(rec);
    }
}

TEST_CASE("budget of exactly mu: initialization only") {
    const auto p = make_problem(0, 2, 1);
    auto cfg = small_config(2, SelectionScheme::BA, CrossoverMethod::SPX, RankingMethod::NS, 69);
    const auto rec = run(cfg, p, context_for(p));
    CHECK(rec.iterations == 0);
    CHECK(rec.evaluations == 69);
    REQUIRE(rec.trace.size() == 1);
    CHECK(rec.trace[0].evals == 69);
    CHECK(rec.trace[0].cumulative_replacements == 0);
}

TEST_CASE("BC replacement law at n = 10 with a budget of 10^5") {
    const auto p = make_problem(5, 10, 1);
    auto cfg = small_config(10, SelectionScheme::BC, CrossoverMethod::SPX, RankingMethod::NS, 100000);
    const auto rec = run(cfg, p, context_for(p));
    const std::uint64_t expected = 11 * ((100000 - 230) / 100);
    CHECK(rec.iterations == (100000 - 230) / 100);
    CHECK(rec.trace.back().cumulative_replacements == expected);
    for (const auto& s : rec.trace) {
        CHECK(s.cumulative_replacements == 11 * s.iteration);
    }
    check_trace_shape(rec);
}

TEST_CASE("determinism: equal seeds give identical records") {
    const auto p = make_problem(2, 4, 3);
    for (auto r : {RankingMethod::NS, RankingMethod::SM, RankingMethod::SP, RankingMethod::IB}) {
        auto cfg = small_config(4, SelectionScheme::BA, CrossoverMethod::PCX, r, 3000);
        cfg.record_population_indicator = true;
        const auto a = run(cfg, p, context_for(p));
        const auto b = run(cfg, p, context_for(p));
        REQUIRE(a.trace.size() == b.trace.size());
        for (std::size_t i = 0; i < a.trace.size(); ++i) {
            CHECK(a.trace[i].evals == b.trace[i].evals);
            CHECK(a.trace[i].archive_indicator == b.trace[i].archive_indicator);
            CHECK(a.trace[i].population_indicator == b.trace[i].population_indicator);
            CHECK(a.trace[i].cumulative_replacements == b.trace[i].cumulative_replacements);
        }
        REQUIRE(a.final_archive.size() == b.final_archive.size());
        for (std::size_t i = 0; i < a.final_archive.size(); ++i) {
            CHECK(a.final_archive[i].f == b.final_archive[i].f);
            CHECK(a.final_archive[i].eval_id == b.final_archive[i].eval_id);
        }
        cfg.seed = 8;
        CHECK(run(cfg, p, context_for(p)).final_archive.front().f != a.final_archive.front().f);
    }
}

TEST_CASE("final archive equals the non-dominated filter of the evaluation log") {
    const auto p = make_problem(1, 2, 1);
    for (auto s : {SelectionScheme::BA, SelectionScheme::BF, SelectionScheme::BC}) {
        std::vector<oracle::Point> log;
        RunHooks hooks;
        hooks.on_evaluation = [&](const Individual& ind) { log.push_back(ind.f); };
        const auto cfg = small_config(2, s, CrossoverMethod::SPX, RankingMethod::NS, 4000);
        const auto rec = run(cfg, p, context_for(p), hooks);
        CHECK(log.size() == rec.evaluations);
        std::vector<oracle::Point> got;
        for (const auto& e : rec.final_archive) {
            got.push_back(e.f);
            CHECK(log[e.eval_id - 1] == e.f);
        }
        std::sort(got.begin(), got.end());
        CHECK(got == oracle::nondominated_stream(log));
        // The last trace sample describes this archive.
        std::vector<ObjectiveVector> pts(got.begin(), got.end());
        CHECK(rec.trace.back().archive_size == got.size());
        CHECK(std::abs(rec.trace.back().archive_indicator - icoco_value(pts, context_for(p))) <= 1e-9);
    }
}

TEST_CASE("record interval and population indicator") {
    const auto p = make_problem(5, 2, 1);
    auto cfg = small_config(2, SelectionScheme::BC, CrossoverMethod::SPX, RankingMethod::NS, 2000);
    cfg.record_interval = 100;
    cfg.record_population_indicator = true;
    const auto rec = run(cfg, p, context_for(p));
    check_trace_shape(rec);
    for (std::size_t i = 1; i + 1 < rec.trace.size(); ++i) {
        CHECK(rec.trace[i].evals - rec.trace[i - 1].evals >= 100);
    }
    for (const auto& s : rec.trace) {
        REQUIRE(s.population_indicator.has_value());
        CHECK(*s.population_indicator >= s.archive_indicator - 1e-12);
    }
    cfg.record_population_indicator = false;
    for (const auto& s : run(cfg, p, context_for(p)).trace) {
        CHECK_FALSE(s.population_indicator.has_value());
    }
    const auto it = rec.indicator_trace();
    CHECK(it.dimension == 2);
    CHECK(it.samples.size() == rec.trace.size());
}

TEST_CASE("every scheme, crossover and ranking runs") {
    const auto p = make_problem(4, 3, 2);
    for (auto s : {SelectionScheme::BA, SelectionScheme::BF, SelectionScheme::BC}) {
        for (auto c : {CrossoverMethod::SBX, CrossoverMethod::BLX, CrossoverMethod::PCX, CrossoverMethod::SPX,
                       CrossoverMethod::REX}) {
            for (auto r : {RankingMethod::NS, RankingMethod::SM, RankingMethod::SP, RankingMethod::IB}) {
                const auto rec = run(small_config(3, s, c, r, 600), p, context_for(p));
                CHECK(rec.evaluations <= 600);
                check_trace_shape(rec);
            }
        }
    }
}

TEST_CASE("generational loop: even brood, exact accounting") {
    const auto p = make_problem(0, 2, 1);
    auto cfg = RunConfig::generational(2, RankingMethod::NS);
    cfg.max_evals = 2000;
    cfg.seed = 3;
    const auto rec = run(cfg, p, context_for(p));
    CHECK(rec.evaluations == 69 + 70 * rec.iterations);
    CHECK(rec.evaluations <= 2000);
    check_trace_shape(rec);
}
