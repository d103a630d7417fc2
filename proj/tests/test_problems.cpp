#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "emoa/problems.hpp"

using namespace emoa;

namespace {

double sphere_direct(const std::vector<double>& z) {
    double s = 0.0;
    for (double v : z) {
        s += v * v;
    }
    return s;
}

std::vector<double> ones(std::size_t n, double v = 1.0) {
    return std::vector<double>(n, v);
}

} // namespace

TEST_CASE("base functions vanish at the origin") {
    for (auto kind : {BaseKind::Sphere, BaseKind::Ellipsoid, BaseKind::Rastrigin, BaseKind::Rosenbrock,
                      BaseKind::SharpRidge, BaseKind::DifferentPowers}) {
        for (std::size_t n : {2u, 5u, 20u}) {
            CHECK(base_value(kind, std::vector<double>(n, 0.0)) == doctest::Approx(0.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("base functions: values from the textbook formulas") {
    // Sphere of (1, ..., 1) is n.
    CHECK(base_value(BaseKind::Sphere, ones(7)) == 7.0);
    // Rastrigin at integer points: cos terms are 1, so only the quadratic part remains.
    CHECK(base_value(BaseKind::Rastrigin, std::vector{1.0, -2.0}) == doctest::Approx(5.0));
    CHECK(base_value(BaseKind::Rastrigin, std::vector{0.5, 0.0}) == doctest::Approx(10.0 * 2.0 + 0.25));
    // Ellipsoid, n = 2: weights 1 and 1e6.
    CHECK(base_value(BaseKind::Ellipsoid, std::vector{1.0, 1.0}) == doctest::Approx(1.0 + 1e6));
    // DifferentPowers, n = 2: |z1|^2 + |z2|^6.
    CHECK(base_value(BaseKind::DifferentPowers, std::vector{2.0, 2.0}) == doctest::Approx(4.0 + 64.0));
    // SharpRidge: z1^2 + 100 * ||z_{2..n}||.
    CHECK(base_value(BaseKind::SharpRidge, std::vector{1.0, 3.0, 4.0}) == doctest::Approx(1.0 + 500.0));
    // Rosenbrock on w = z + 1; z = (-1, -1) gives w = 0: sum of (w-1)^2 = 1.
    CHECK(base_value(BaseKind::Rosenbrock, std::vector{-1.0, -1.0}) == doctest::Approx(1.0));
}

TEST_CASE("sphere with identity transform and zero shift at (1, ..., 1) is n") {
    const std::size_t n = 6;
    ObjectiveComponent g{BaseKind::Sphere, {std::vector<double>(n, 0.0), {}, 0}};
    CHECK(g.value(ones(n)) == 6.0);
    ObjectiveComponent r{BaseKind::Rastrigin, {std::vector<double>(n, 0.0), {}, 0}};
    CHECK(r.value(std::vector<double>(n, 0.0)) == 0.0);
}

TEST_CASE("random rotations are orthogonal") {
    RandomSource rng(3);
    for (std::size_t n : {2u, 3u, 10u, 40u}) {
        const auto q = random_rotation(n, rng);
        REQUIRE(q.size() == n * n);
        double worst = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                double dot = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    dot += q[r * n + a] * q[r * n + b];
                }
                worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
            }
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("instance transform applies z = R (x - shift)") {
    InstanceTransform t{{1.0, 2.0}, {0.0, -1.0, 1.0, 0.0}, 0};
    std::vector<double> z(2);
    t.apply(std::vector{2.0, 5.0}, z);
    CHECK(z[0] == doctest::Approx(-3.0));
    CHECK(z[1] == doctest::Approx(1.0));
}

TEST_CASE("make_suite: cardinality, ids, determinism") {
    const std::vector<std::size_t> one{10};
    const auto a = make_suite(one, 1);
    const auto b = make_suite(one, 1);
    REQUIRE(a.problems.size() == 10);
    for (std::size_t i = 0; i < a.problems.size(); ++i) {
        CHECK(a.problems[i].id() == b.problems[i].id());
        CHECK(a.problems[i].dimension() == 10);
        CHECK(a.problems[i].g1().transform.shift == b.problems[i].g1().transform.shift);
        CHECK(a.problems[i].g2().transform.rotation == b.problems[i].g2().transform.rotation);
        CHECK(a.problems[i].nadir() == b.problems[i].nadir());
    }
    const std::vector<std::size_t> three{2, 10, 40};
    const auto c = make_suite(three, 1);
    CHECK(c.problems.size() == 30);
    std::set<std::string> ids;
    for (const auto& p : c.problems) {
        ids.insert(p.id());
    }
    CHECK(ids.size() == 30);
    CHECK(c.find("p06_d40").dimension() == 40);
    CHECK_THROWS_AS(c.find("p11_d2"), ConfigError);
    const auto other = make_suite(one, 2);
    CHECK(other.problems[0].g1().transform.shift != a.problems[0].g1().transform.shift);
    CHECK_THROWS_AS(make_suite(std::vector<std::size_t>{}, 1), ConfigError);
    CHECK_THROWS_AS(make_problem(0, 1, 1), ConfigError);
}

TEST_CASE("the sphere / rotated Rastrigin pair is shipped") {
    bool found = false;
    for (const auto& p : shipped_pairs()) {
        found = found || (p.first == BaseKind::Sphere && !p.first_rotated && p.second == BaseKind::Rastrigin &&
                          p.second_rotated);
    }
    CHECK(found);
    CHECK(shipped_pairs().size() == 10);
    const auto& p06 = shipped_pairs()[5];
    CHECK(p06.first == BaseKind::Rastrigin);
    CHECK(p06.first_rotated);
    CHECK(p06.second == BaseKind::Rastrigin);
    CHECK(p06.second_rotated);
}

TEST_CASE("problems: optima, ideal and nadir") {
    const auto suite = make_suite(std::vector<std::size_t>{2, 10}, 1);
    for (const auto& p : suite.problems) {
        const auto& s1 = p.g1().transform.shift;
        const auto& s2 = p.g2().transform.shift;
        for (double v : s1) {
            CHECK(std::abs(v) <= 4.0);
        }
        const auto f_at_1 = p.evaluate(s1);
        const auto f_at_2 = p.evaluate(s2);
        CHECK(std::abs(f_at_1[0]) < 1e-9);
        CHECK(std::abs(f_at_2[1]) < 1e-9);
        CHECK(p.ideal() == std::vector{0.0, 0.0});
        CHECK(p.nadir()[0] >= f_at_2[0]);
        CHECK(p.nadir()[1] >= f_at_1[1]);
        CHECK(p.nadir()[0] > p.ideal()[0]);
        CHECK(p.nadir()[1] > p.ideal()[1]);
        CHECK(p.nadir()[0] == doctest::Approx(std::max(1.1 * f_at_2[0], 1e-3)));
    }
}

TEST_CASE("double sphere evaluated at the first optimum") {
    const auto p = make_problem(0, 5, 9);
    const auto& s1 = p.g1().transform.shift;
    const auto f = p.evaluate(s1);
    CHECK(f[0] == 0.0);
    std::vector<double> d(5);
    for (std::size_t j = 0; j < 5; ++j) {
        d[j] = s1[j] - p.g2().transform.shift[j];
    }
    CHECK(f[1] == doctest::Approx(sphere_direct(d)));
}

TEST_CASE("evaluate: contract violations") {
    const auto p = make_problem(1, 3, 1);
    CHECK_THROWS_AS(p.evaluate(std::vector{0.0, 0.0}), ContractViolation);
    CHECK_THROWS_AS(p.evaluate(std::vector<double>{0.0, NAN, 0.0}), ContractViolation);
    CHECK_THROWS_AS(p.evaluate(std::vector<double>{0.0, INFINITY, 0.0}), ContractViolation);
    // Outside the bounds is fine.
    CHECK(p.evaluate(std::vector{7.0, -9.0, 0.0}).size() == 2);
}

TEST_CASE("rotation plumbing: two rotations give matching value distributions") {
    const std::size_t n = 10;
    RandomSource rng(11);
    const DecisionVector shift(n, 0.0);
    ObjectiveComponent a{BaseKind::Rastrigin, {shift, random_rotation(n, rng), 1}};
    ObjectiveComponent b{BaseKind::Rastrigin, {shift, random_rotation(n, rng), 2}};
    REQUIRE(a.transform.rotation != b.transform.rotation);
    RandomSource pts(12);
    const int m = 1000;
    double sa = 0.0;
    double sb = 0.0;
    double sq = 0.0;
    double min_a = 1e300;
    double min_b = 1e300;
    for (int i = 0; i < m; ++i) {
        DecisionVector x(n);
        for (auto& v : x) {
            v = pts.uniform(-5.0, 5.0);
        }
        const double va = a.value(x);
        sa += va;
        sq += va * va;
        min_a = std::min(min_a, va);
        DecisionVector y(n);
        for (auto& v : y) {
            v = pts.uniform(-5.0, 5.0);
        }
        const double vb = b.value(y);
        sb += vb;
        min_b = std::min(min_b, vb);
    }
    const double mean_a = sa / m;
    const double sd = std::sqrt(sq / m - mean_a * mean_a);
    // Difference of two sample means: sd * sqrt(2/m); allow 4 of those plus the
    // box-corner anisotropy that rotations introduce.
    CHECK(std::abs(mean_a - sb / m) < 4.0 * sd * std::sqrt(2.0 / m) + 0.05 * mean_a);
    CHECK(std::abs(min_a - min_b) < 0.5 * mean_a);
}

TEST_CASE("evaluator counts and numbers evaluations") {
    const auto p = make_problem(0, 2, 1);
    std::vector<std::uint64_t> seen;
    Evaluator ev(p, [&](const Individual& ind) { seen.push_back(ind.eval_id); });
    const auto a = ev.evaluate({0.0, 0.0});
    const auto b = ev.evaluate({1.0, 0.0});
    CHECK(a.eval_id == 1);
    CHECK(b.eval_id == 2);
    CHECK(ev.count() == 2);
    CHECK(seen == std::vector<std::uint64_t>{1, 2});
    CHECK(a.f == p.evaluate(a.x));
}
