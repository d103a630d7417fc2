#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "emoa/ranking.hpp"
#include "oracles.hpp"

using namespace emoa;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr RankingMethod kMethods[] = {RankingMethod::NS, RankingMethod::SM, RankingMethod::SP, RankingMethod::IB};

std::vector<ObjectiveVector> random_points(std::size_t count, RandomSource& rng) {
    std::vector<ObjectiveVector> pts(count);
    for (auto& p : pts) {
        p = {rng.uniform(), rng.uniform()};
    }
    return pts;
}

// Integer coordinates so that ties and duplicates occur.
std::vector<ObjectiveVector> grid_points(std::size_t count, int side, RandomSource& rng) {
    std::vector<ObjectiveVector> pts(count);
    for (auto& p : pts) {
        p = {static_cast<double>(rng.uniform_index(side)), static_cast<double>(rng.uniform_index(side))};
    }
    return pts;
}

// A mutually non-dominated front with distinct coordinates.
std::vector<ObjectiveVector> random_front(std::size_t count, RandomSource& rng) {
    std::vector<double> xs(count);
    for (auto& x : xs) {
        x = rng.uniform();
    }
    std::sort(xs.begin(), xs.end());
    std::vector<double> ys(count);
    for (auto& y : ys) {
        y = rng.uniform();
    }
    std::sort(ys.rbegin(), ys.rend());
    std::vector<ObjectiveVector> front;
    for (std::size_t i = 0; i < count; ++i) {
        front.push_back({xs[i], ys[i]});
    }
    return front;
}

std::vector<Individual> as_set(const std::vector<ObjectiveVector>& pts, std::uint64_t first_id = 1) {
    std::vector<Individual> set;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        set.push_back({{}, pts[i], first_id + i});
    }
    return set;
}

std::vector<std::vector<std::size_t>> as_nested(const std::vector<Front>& fronts) {
    return {fronts.begin(), fronts.end()};
}

} // namespace

TEST_CASE("fast_nondominated_sort: examples") {
    CHECK(as_nested(fast_nondominated_sort(std::vector<ObjectiveVector>{{1, 1}})) ==
          std::vector<std::vector<std::size_t>>{{0}});
    CHECK(as_nested(fast_nondominated_sort(std::vector<ObjectiveVector>{{1, 2}, {2, 1}, {2, 2}})) ==
          std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
}

TEST_CASE("fast_nondominated_sort: matches the peeling oracle up to 500 points") {
    RandomSource rng(1);
    for (std::size_t size : {1u, 2u, 7u, 50u, 200u, 500u}) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto pts = rep % 2 ? grid_points(size, 12, rng) : random_points(size, rng);
            CHECK(as_nested(fast_nondominated_sort(pts)) == oracle::fronts(pts));
        }
    }
}

TEST_CASE("crowding_distance: examples") {
    CHECK(crowding_distance(std::vector<ObjectiveVector>{{0, 1}, {1, 0}}) == std::vector<double>{kInf, kInf});
    CHECK(crowding_distance(std::vector<ObjectiveVector>{{3, 3}}) == std::vector<double>{kInf});
    const auto d = crowding_distance(std::vector<ObjectiveVector>{{0, 2}, {1, 1}, {2, 0}});
    CHECK(d[0] == kInf);
    CHECK(d[1] == doctest::Approx(2.0));
    CHECK(d[2] == kInf);
}

TEST_CASE("crowding_distance: matches the definition on random fronts") {
    RandomSource rng(2);
    for (std::size_t size : {3u, 4u, 10u, 60u}) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto front = random_front(size, rng);
            const auto got = crowding_distance(front);
            const auto want = oracle::crowding(front);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                if (std::isinf(want[i])) {
                    CHECK(std::isinf(got[i]));
                } else {
                    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("crowding_distance: a zero-range objective contributes nothing") {
    const auto d = crowding_distance(std::vector<ObjectiveVector>{{0, 5}, {1, 5}, {3, 5}});
    CHECK(d[0] == kInf);
    CHECK(d[1] == doctest::Approx(1.0));
    CHECK(d[2] == kInf);
}

TEST_CASE("rank_ns: orders and front monotonicity") {
    // One front: the extremes (eval_id order), then (2,5) with 0.9 + 0.6 before (1,6) with 0.2 + 0.5.
    const auto one_front = as_set({{0, 10}, {1, 6}, {2, 5}, {10, 0}});
    const auto r = rank_ns(one_front);
    CHECK(r.order == std::vector<std::size_t>{0, 3, 2, 1});

    RandomSource rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const auto set = as_set(grid_points(40, 8, rng));
        const auto ranked = rank_ns(set);
        CHECK(ranked.order == oracle::ns_order(set));
        for (std::size_t i = 1; i < ranked.order.size(); ++i) {
            CHECK(ranked.keys[ranked.order[i - 1]].front <= ranked.keys[ranked.order[i]].front);
        }
    }
}

TEST_CASE("hv_contribution_2d: examples") {
    CHECK(hv_contribution_2d(std::vector<ObjectiveVector>{{0, 0}}, {1, 1}) == std::vector<double>{1.0});
    const auto c = hv_contribution_2d(std::vector<ObjectiveVector>{{0, 2}, {1, 1}, {2, 0}}, {3, 3});
    CHECK(c[1] == doctest::Approx(1.0));
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[2] == doctest::Approx(1.0));
    // Outside the reference box: no contribution.
    const auto o = hv_contribution_2d(std::vector<ObjectiveVector>{{0, 3}, {1, 1}}, {3, 3});
    CHECK(o[0] == 0.0);
    CHECK(o[1] == doctest::Approx(4.0));
}

TEST_CASE("hv_contribution_2d: equals HV(S) - HV(S without i) on integer fronts") {
    RandomSource rng(4);
    for (int rep = 0; rep < 40; ++rep) {
        // Integer front: distinct x, strictly decreasing y.
        const std::size_t size = 1 + rng.uniform_index(8);
        auto xs = rng.sample_without_replacement(20, size);
        auto ys = rng.sample_without_replacement(20, size);
        std::sort(xs.begin(), xs.end());
        std::sort(ys.rbegin(), ys.rend());
        std::vector<ObjectiveVector> front;
        for (std::size_t i = 0; i < size; ++i) {
            front.push_back({static_cast<double>(xs[i]), static_cast<double>(ys[i])});
        }
        const auto contrib = hv_contribution_2d(front, {20, 20});
        const double total = oracle::grid_hv(front, 20, 20, 0, 0);
        double sum = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            auto rest = front;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            CHECK(contrib[i] == doctest::Approx(total - oracle::grid_hv(rest, 20, 20, 0, 0)));
            sum += contrib[i];
        }
        if (size == 1) {
            CHECK(sum == doctest::Approx(total));
        } else {
            CHECK(sum < total);
        }
    }
}

TEST_CASE("rank_sm: contribution order within a front, fronts first") {
    // Contributions w.r.t. (10, 10): (0,9) [0,1) x [9,10) = 1; (1,4) [1,4) x [4,9) = 15;
    // (4,1) [4,10) x [1,4) = 18. (5,5) is in the second front.
    const auto set = as_set({{0, 9}, {1, 4}, {4, 1}, {5, 5}});
    const auto r = rank_sm(set, {10, 10});
    CHECK(r.order == std::vector<std::size_t>{2, 1, 0, 3});

    RandomSource rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        const auto s = as_set(grid_points(30, 6, rng));
        const auto ns = rank_ns(s);
        const auto sm = rank(RankingMethod::SM, s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(ns.keys[i].front == sm.keys[i].front);
        }
    }
}

TEST_CASE("set_relative_reference: worst point plus 10% of the range, or +1") {
    const auto ref = set_relative_reference(std::vector<ObjectiveVector>{{0, 2}, {4, 2}});
    CHECK(ref[0] == doctest::Approx(4.4));
    CHECK(ref[1] == doctest::Approx(3.0));
}

TEST_CASE("spea2_fitness: examples") {
    // A single non-dominated point among dominated ones.
    const std::vector<ObjectiveVector> pts{{0, 0}, {1, 2}, {2, 1}, {3, 3}};
    const auto f = spea2_fitness(pts);
    CHECK(f[0] < 1.0);
    CHECK(std::min_element(f.begin(), f.end()) - f.begin() == 0);
    // Mutually non-dominated: only the density term remains.
    const auto g = spea2_fitness(std::vector<ObjectiveVector>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});
    for (double v : g) {
        CHECK(v > 0.0);
        CHECK(v < 0.5);
    }
}

TEST_CASE("spea2_fitness: raw and density parts match the double loop") {
    RandomSource rng(6);
    for (std::size_t size : {2u, 5u, 100u}) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto pts = rep % 2 ? grid_points(size, 10, rng) : random_points(size, rng);
            const auto got = spea2_fitness(pts);
            const auto raw = oracle::spea2_raw(pts);
            const auto dens = oracle::spea2_density(pts);
            for (std::size_t i = 0; i < size; ++i) {
                CHECK(got[i] == doctest::Approx(raw[i] + dens[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("ibea_fitness: examples and direct summation") {
    IbeaConfig cfg;
    const auto two = ibea_fitness(std::vector<ObjectiveVector>{{0, 0}, {1, 1}}, cfg);
    CHECK(two[0] > two[1]);
    const auto dup = ibea_fitness(std::vector<ObjectiveVector>{{0.5, 0.2}, {0.1, 0.9}, {0.5, 0.2}}, cfg);
    CHECK(dup[0] == dup[2]);
    // Constant objective: treated as zero range, no division by zero.
    const auto flat = ibea_fitness(std::vector<ObjectiveVector>{{0, 1}, {1, 1}, {2, 1}}, cfg);
    for (double v : flat) {
        CHECK(std::isfinite(v));
    }

    RandomSource rng(7);
    for (std::size_t size : {2u, 10u, 80u}) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto pts = rep % 2 ? grid_points(size, 10, rng) : random_points(size, rng);
            const auto got = ibea_fitness(pts, cfg);
            const auto want = oracle::ibea(pts, cfg.kappa);
            for (std::size_t i = 0; i < size; ++i) {
                CHECK(std::abs(got[i] - want[i]) <= 1e-12 * std::max(1.0, std::abs(want[i])));
            }
        }
    }
}

TEST_CASE("rank: single member, unknown names, determinism") {
    const auto one = as_set({{4, 2}});
    for (auto m : kMethods) {
        CHECK(rank(m, one).order == std::vector<std::size_t>{0});
    }
    CHECK(parse_ranking("SP") == RankingMethod::SP);
    CHECK_THROWS_AS(parse_ranking("HV"), ConfigError);
    RandomSource rng(8);
    const auto set = as_set(grid_points(40, 6, rng));
    for (auto m : kMethods) {
        CHECK(rank(m, set).order == rank(m, set).order);
    }
}

TEST_CASE("rank: dominance consistency and bijection over random sets, every method") {
    RandomSource rng(9);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t size = 2 + rng.uniform_index(30);
        const auto pts = rep % 2 ? grid_points(size, 5, rng) : random_points(size, rng);
        const auto set = as_set(pts);
        for (auto m : kMethods) {
            const auto r = rank(m, set);
            const auto pos = r.positions();
            auto sorted = r.order;
            std::sort(sorted.begin(), sorted.end());
            bool bijection = true;
            for (std::size_t i = 0; i < size; ++i) {
                bijection = bijection && sorted[i] == i;
            }
            bool consistent = true;
            for (std::size_t a = 0; a < size; ++a) {
                for (std::size_t b = 0; b < size; ++b) {
                    if (oracle::dom(pts[a], pts[b])) {
                        consistent = consistent && pos[a] < pos[b];
                    }
                }
            }
            CHECK_MESSAGE(bijection, to_string(m));
            CHECK_MESSAGE(consistent, to_string(m));
        }
    }
}

TEST_CASE("rank: equal keys fall back to eval_id") {
    // Duplicates share every key; the older individual goes first.
    std::vector<Individual> set{{{}, {1, 1}, 9}, {{}, {1, 1}, 4}, {{}, {0, 2}, 7}, {{}, {2, 0}, 8}};
    for (auto m : kMethods) {
        const auto pos = rank(m, set).positions();
        CHECK_MESSAGE(pos[1] < pos[0], to_string(m));
    }
}
