#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "emoa/selection.hpp"
#include "oracles.hpp"

using namespace emoa;

namespace {

constexpr RankingMethod kMethods[] = {RankingMethod::NS, RankingMethod::SM, RankingMethod::SP, RankingMethod::IB};
constexpr SelectionScheme kSchemes[] = {SelectionScheme::BA, SelectionScheme::BF, SelectionScheme::BC};

struct Instance {
    Population P;
    Population Q;
    std::vector<std::size_t> R;
};

Individual make(double f1, double f2, std::uint64_t id) {
    return Individual{{f1, f2}, {f1, f2}, id};
}

// Coarse integer objectives so that duplicates and ties are common.
Instance random_instance(std::size_t mu, std::size_t k, std::size_t lambda, RandomSource& rng, double shift = 0.0) {
    Instance in;
    std::uint64_t id = 1;
    auto coord = [&] { return static_cast<double>(rng.uniform_index(7)); };
    for (std::size_t i = 0; i < mu; ++i) {
        in.P.push_back(make(coord(), coord(), id++));
    }
    for (std::size_t i = 0; i < lambda; ++i) {
        in.Q.push_back(make(coord() + shift, coord() + shift, id++));
    }
    in.R = rng.sample_without_replacement(mu, k);
    return in;
}

std::multiset<std::uint64_t> ids_of(const Population& pop) {
    std::multiset<std::uint64_t> ids;
    for (const auto& ind : pop) {
        ids.insert(ind.eval_id);
    }
    return ids;
}

oracle::OrderFn library_order(RankingMethod m) {
    return [m](const std::vector<Individual>& set) { return rank(m, set).order; };
}

SelectionOutcome select(SelectionScheme s, const Instance& in, RankingMethod m) {
    return environmental_select(s, in.P, in.Q, in.R, m, RankingContext{});
}

} // namespace

TEST_CASE("BA, BF, BC equal their direct oracles under NS") {
    RandomSource rng(1);
    const oracle::OrderFn ns = oracle::ns_order;
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t mu = 3 + rng.uniform_index(20);
        const std::size_t k = 2 + rng.uniform_index(mu - 1);
        const std::size_t lambda = k + rng.uniform_index(15);
        const auto in = random_instance(mu, k, lambda, rng);
        CHECK(ids_of(select(SelectionScheme::BA, in, RankingMethod::NS).next_population) == oracle::ba(in.P, in.Q, ns));
        CHECK(ids_of(select(SelectionScheme::BF, in, RankingMethod::NS).next_population) ==
              oracle::bf(in.P, in.Q, in.R, ns));
        CHECK(ids_of(select(SelectionScheme::BC, in, RankingMethod::NS).next_population) ==
              oracle::bc(in.P, in.Q, in.R, ns));
    }
}

TEST_CASE("selection sets follow the ranked order for SM, SP and IB") {
    RandomSource rng(2);
    for (auto m : {RankingMethod::SM, RankingMethod::SP, RankingMethod::IB}) {
        const auto order = library_order(m);
        for (int rep = 0; rep < 100; ++rep) {
            const std::size_t mu = 3 + rng.uniform_index(15);
            const std::size_t k = 2 + rng.uniform_index(mu - 1);
            const std::size_t lambda = k + rng.uniform_index(10);
            const auto in = random_instance(mu, k, lambda, rng);
            CHECK(ids_of(select(SelectionScheme::BA, in, m).next_population) == oracle::ba(in.P, in.Q, order));
            CHECK(ids_of(select(SelectionScheme::BF, in, m).next_population) == oracle::bf(in.P, in.Q, in.R, order));
            CHECK(ids_of(select(SelectionScheme::BC, in, m).next_population) == oracle::bc(in.P, in.Q, in.R, order));
        }
    }
}

TEST_CASE("population size, replacement counts and child survivors") {
    RandomSource rng(3);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t mu = 3 + rng.uniform_index(20);
        const std::size_t k = 2 + rng.uniform_index(mu - 1);
        const std::size_t lambda = k + rng.uniform_index(15);
        const auto in = random_instance(mu, k, lambda, rng);
        for (auto s : kSchemes) {
            for (auto m : kMethods) {
                const auto out = select(s, in, m);
                CHECK(out.next_population.size() == mu);
                CHECK(out.replaced_parent_count <= k);
                std::set<std::uint64_t> next;
                std::size_t from_children = 0;
                for (const auto& ind : out.next_population) {
                    next.insert(ind.eval_id);
                    from_children += ind.eval_id > mu ? 1 : 0;
                }
                std::size_t lost = 0;
                for (std::size_t r : in.R) {
                    lost += next.count(in.P[r].eval_id) ? 0 : 1;
                }
                CHECK(out.replaced_parent_count == lost);
                CHECK(out.survivors_from_children == from_children);
                if (s == SelectionScheme::BC) {
                    CHECK(out.replaced_parent_count == k);
                }
                if (s != SelectionScheme::BA) {
                    // Non-parents survive unconditionally.
                    for (std::size_t i = 0; i < mu; ++i) {
                        if (std::find(in.R.begin(), in.R.end(), i) == in.R.end()) {
                            CHECK(next.count(in.P[i].eval_id) == 1);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("elitism: BA keeps the best, BF keeps the best of the family") {
    RandomSource rng(4);
    for (int rep = 0; rep < 200; ++rep) {
        const auto in = random_instance(10, 3, 6, rng);
        for (auto m : kMethods) {
            Population all(in.P);
            all.insert(all.end(), in.Q.begin(), in.Q.end());
            const auto order = rank(m, all).order;
            const auto ba = ids_of(select(SelectionScheme::BA, in, m).next_population);
            CHECK(ba.count(all[order.front()].eval_id) == 1);

            std::set<std::size_t> family(in.R.begin(), in.R.end());
            for (std::size_t c = 0; c < in.Q.size(); ++c) {
                family.insert(in.P.size() + c);
            }
            std::size_t best_family = all.size();
            for (std::size_t pos : order) {
                if (family.count(pos)) {
                    best_family = pos;
                    break;
                }
            }
            const auto bf = ids_of(select(SelectionScheme::BF, in, m).next_population);
            CHECK(bf.count(all[best_family].eval_id) == 1);
        }
    }
}

TEST_CASE("children all dominated: BA and BF keep P, BC still takes k children") {
    Instance in;
    for (std::uint64_t i = 0; i < 6; ++i) {
        in.P.push_back(make(static_cast<double>(i), static_cast<double>(5 - i), i + 1));
    }
    for (std::uint64_t c = 0; c < 4; ++c) {
        in.Q.push_back(make(10.0 + static_cast<double>(c), 10.0 + static_cast<double>(c), 7 + c));
    }
    in.R = {0, 2, 5};
    for (auto m : kMethods) {
        CHECK(ids_of(select(SelectionScheme::BA, in, m).next_population) == ids_of(in.P));
        const auto bf = select(SelectionScheme::BF, in, m);
        CHECK(ids_of(bf.next_population) == ids_of(in.P));
        CHECK(bf.replaced_parent_count == 0);
        // BC non-elitism: the parents are removed and the best three children enter,
        // although every child is worse than every member of P.
        const auto bc = select(SelectionScheme::BC, in, m);
        CHECK(bc.replaced_parent_count == 3);
        CHECK(ids_of(bc.next_population) == std::multiset<std::uint64_t>{2, 4, 5, 7, 8, 9});
    }
}

TEST_CASE("children all dominating: BA takes only children, BF replaces every parent") {
    Instance in;
    for (std::uint64_t i = 0; i < 4; ++i) {
        in.P.push_back(make(10.0 + static_cast<double>(i), 13.0 - static_cast<double>(i), i + 1));
    }
    for (std::uint64_t c = 0; c < 5; ++c) {
        in.Q.push_back(make(static_cast<double>(c), 4.0 - static_cast<double>(c), 5 + c));
    }
    in.R = {1, 3};
    for (auto m : kMethods) {
        for (const auto& ind : select(SelectionScheme::BA, in, m).next_population) {
            CHECK(ind.eval_id >= 5);
        }
        CHECK(select(SelectionScheme::BF, in, m).replaced_parent_count == 2);
    }
}

TEST_CASE("BC: lambda = k keeps every child, lambda < k is a configuration error") {
    RandomSource rng(5);
    const auto in = random_instance(8, 3, 3, rng);
    for (auto m : kMethods) {
        auto ids = ids_of(select(SelectionScheme::BC, in, m).next_population);
        for (const auto& c : in.Q) {
            CHECK(ids.count(c.eval_id) == 1);
        }
    }
    const auto small = random_instance(8, 3, 2, rng);
    CHECK_THROWS_AS(select(SelectionScheme::BC, small, RankingMethod::NS), ConfigError);
}

TEST_CASE("P = R with lambda = mu = k: BA and BF coincide, BC keeps Q") {
    RandomSource rng(6);
    for (int rep = 0; rep < 100; ++rep) {
        auto in = random_instance(6, 6, 6, rng);
        in.R = {0, 1, 2, 3, 4, 5};
        for (auto m : kMethods) {
            CHECK(ids_of(select(SelectionScheme::BA, in, m).next_population) ==
                  ids_of(select(SelectionScheme::BF, in, m).next_population));
            CHECK(ids_of(select(SelectionScheme::BC, in, m).next_population) == ids_of(in.Q));
        }
    }
}

TEST_CASE("duplicates are distinct members") {
    Instance in;
    for (std::uint64_t i = 0; i < 4; ++i) {
        in.P.push_back(make(1.0, 1.0, i + 1));
    }
    in.Q = {make(1.0, 1.0, 5), make(1.0, 1.0, 6)};
    in.R = {0, 3};
    for (auto s : kSchemes) {
        for (auto m : kMethods) {
            const auto out = select(s, in, m);
            CHECK(out.next_population.size() == 4);
            CHECK(ids_of(out.next_population).size() == 4);
        }
    }
    CHECK(parse_selection("BF") == SelectionScheme::BF);
    CHECK_THROWS_AS(parse_selection("BX"), ConfigError);
}
