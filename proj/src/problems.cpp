#include "emoa/problems.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace emoa {

namespace {

constexpr double kSearchLower = -5.0;
constexpr double kSearchUpper = 5.0;
constexpr double kShiftRange = 4.0;
constexpr double kNadirMargin = 1.1;
constexpr double kNadirFloor = 1e-3;

constexpr std::array<PairSpec, 10> kPairs{{
    {"p01", "sphere/sphere", BaseKind::Sphere, false, BaseKind::Sphere, false},
    {"p02", "sphere/rastrigin-rot", BaseKind::Sphere, false, BaseKind::Rastrigin, true},
    {"p03", "sphere/rosenbrock", BaseKind::Sphere, false, BaseKind::Rosenbrock, false},
    {"p04", "ellipsoid/ellipsoid-rot", BaseKind::Ellipsoid, false, BaseKind::Ellipsoid, true},
    {"p05", "ellipsoid/rastrigin-rot", BaseKind::Ellipsoid, false, BaseKind::Rastrigin, true},
    {"p06", "rastrigin-rot/rastrigin-rot", BaseKind::Rastrigin, true, BaseKind::Rastrigin, true},
    {"p07", "rosenbrock/rastrigin-rot", BaseKind::Rosenbrock, false, BaseKind::Rastrigin, true},
    {"p08", "sharpridge/sphere", BaseKind::SharpRidge, false, BaseKind::Sphere, false},
    {"p09", "differentpowers/ellipsoid", BaseKind::DifferentPowers, false, BaseKind::Ellipsoid, false},
    {"p10", "rastrigin/rosenbrock", BaseKind::Rastrigin, false, BaseKind::Rosenbrock, false},
}};

// Exponent ramp t_j = (j-1)/(n-1); a 1-D problem uses t = 0.
double ramp(std::size_t j, std::size_t n) {
    return n > 1 ? static_cast<double>(j) / static_cast<double>(n - 1) : 0.0;
}

} // namespace

std::string_view to_string(BaseKind kind) noexcept {
    switch (kind) {
    case BaseKind::Sphere: return "sphere";
    case BaseKind::Ellipsoid: return "ellipsoid";
    case BaseKind::Rastrigin: return "rastrigin";
    case BaseKind::Rosenbrock: return "rosenbrock";
    case BaseKind::SharpRidge: return "sharpridge";
    case BaseKind::DifferentPowers: return "differentpowers";
    }
    return "unknown";
}

double base_value(BaseKind kind, std::span<const double> z) {
    const std::size_t n = z.size();
    double sum = 0.0;
    switch (kind) {
    case BaseKind::Sphere:
        for (double v : z) {
            sum += v * v;
        }
        return sum;
    case BaseKind::Ellipsoid:
        for (std::size_t j = 0; j < n; ++j) {
            sum += std::pow(10.0, 6.0 * ramp(j, n)) * z[j] * z[j];
        }
        return sum;
    case BaseKind::Rastrigin: {
        double cosines = 0.0;
        for (double v : z) {
            cosines += std::cos(2.0 * std::numbers::pi * v);
            sum += v * v;
        }
        return 10.0 * (static_cast<double>(n) - cosines) + sum;
    }
    case BaseKind::Rosenbrock:
        // Standard Rosenbrock at w = z + 1, so that z = 0 is the optimum.
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double w = z[j] + 1.0;
            const double w_next = z[j + 1] + 1.0;
            const double a = w * w - w_next;
            sum += 100.0 * a * a + z[j] * z[j];
        }
        return sum;
    case BaseKind::SharpRidge: {
        double tail = 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            tail += z[j] * z[j];
        }
        return (n > 0 ? z[0] * z[0] : 0.0) + 100.0 * std::sqrt(tail);
    }
    case BaseKind::DifferentPowers:
        for (std::size_t j = 0; j < n; ++j) {
            sum += std::pow(std::abs(z[j]), 2.0 + 4.0 * ramp(j, n));
        }
        return sum;
    }
    return sum;
}

void InstanceTransform::apply(std::span<const double> x, std::span<double> z) const {
    const std::size_t n = x.size();
    if (!rotated()) {
        for (std::size_t j = 0; j < n; ++j) {
            z[j] = x[j] - shift[j];
        }
        return;
    }
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = rotation.data() + r * n;
        double acc = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            acc += row[c] * (x[c] - shift[c]);
        }
        z[r] = acc;
    }
}

double ObjectiveComponent::value(std::span<const double> x) const {
    std::vector<double> z(x.size());
    transform.apply(x, z);
    return base_value(kind, z);
}

std::span<const PairSpec> shipped_pairs() noexcept {
    return kPairs;
}

BiObjectiveProblem::BiObjectiveProblem(std::string id, std::size_t pair_index, std::size_t n,
                                       ObjectiveComponent g1, ObjectiveComponent g2,
                                       std::uint64_t instance_seed)
    : id_(std::move(id)),
      pair_index_(pair_index),
      n_(n),
      bounds_(Bounds::uniform(n, kSearchLower, kSearchUpper)),
      g1_(std::move(g1)),
      g2_(std::move(g2)),
      ideal_{0.0, 0.0},
      instance_seed_(instance_seed) {
    if (pair_index_ >= kPairs.size()) {
        throw ContractViolation("problem: unknown pair index");
    }
    const double f1_at_opt2 = g1_.value(g2_.transform.shift);
    const double f2_at_opt1 = g2_.value(g1_.transform.shift);
    nadir_ = {std::max(kNadirMargin * f1_at_opt2, kNadirFloor),
              std::max(kNadirMargin * f2_at_opt1, kNadirFloor)};
}

const PairSpec& BiObjectiveProblem::pair() const noexcept {
    return kPairs[pair_index_];
}

ObjectiveVector BiObjectiveProblem::evaluate(std::span<const double> x) const {
    if (x.size() != n_) {
        throw ContractViolation("evaluate: decision vector length does not match problem dimension");
    }
    if (!all_finite(x)) {
        throw ContractViolation("evaluate: decision vector has a non-finite component");
    }
    return {g1_.value(x), g2_.value(x)};
}

const BiObjectiveProblem& ProblemSuite::find(std::string_view id) const {
    for (const auto& p : problems) {
        if (p.id() == id) {
            return p;
        }
    }
    throw ConfigError("unknown problem id '" + std::string(id) + "'");
}

std::string problem_id(std::size_t pair_index, std::size_t n) {
    return std::string(kPairs.at(pair_index).key) + "_d" + std::to_string(n);
}

std::vector<double> random_rotation(std::size_t n, RandomSource& rng) {
    Eigen::MatrixXd a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rng.normal();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), a.cols());
    const Eigen::MatrixXd& r = qr.matrixQR();
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
        if (r(c, c) < 0.0) {
            q.col(c) *= -1.0;
        }
    }
    std::vector<double> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[i * n + j] = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

BiObjectiveProblem make_problem(std::size_t pair_index, std::size_t n, std::uint64_t suite_seed) {
    if (pair_index >= kPairs.size()) {
        throw ConfigError("make_problem: pair index out of range");
    }
    if (n < 2) {
        throw ConfigError("make_problem: dimension must be at least 2");
    }
    const PairSpec& spec = kPairs[pair_index];
    const std::uint64_t instance_seed = derive_seed(suite_seed, {pair_index, n});
    RandomSource rng(instance_seed);

    auto draw_shift = [&] {
        DecisionVector s(n);
        for (double& v : s) {
            v = rng.uniform(-kShiftRange, kShiftRange);
        }
        return s;
    };
    DecisionVector shift1 = draw_shift();
    DecisionVector shift2 = draw_shift();
    while (shift2 == shift1) {
        shift2 = draw_shift();
    }

    ObjectiveComponent g1{spec.first, {std::move(shift1), {}, instance_seed}};
    ObjectiveComponent g2{spec.second, {std::move(shift2), {}, instance_seed}};
    if (spec.first_rotated) {
        g1.transform.rotation = random_rotation(n, rng);
    }
    if (spec.second_rotated) {
        g2.transform.rotation = random_rotation(n, rng);
    }
    return BiObjectiveProblem(problem_id(pair_index, n), pair_index, n, std::move(g1), std::move(g2),
                              instance_seed);
}

ProblemSuite make_suite(std::span<const std::size_t> dims, std::uint64_t suite_seed) {
    if (dims.empty()) {
        throw ConfigError("make_suite: no dimensions requested");
    }
    ProblemSuite suite;
    suite.suite_seed = suite_seed;
    for (std::size_t n : dims) {
        if (std::find(suite.dims.begin(), suite.dims.end(), n) != suite.dims.end()) {
            continue;
        }
        suite.dims.push_back(n);
        for (std::size_t p = 0; p < kPairs.size(); ++p) {
            suite.problems.push_back(make_problem(p, n, suite_seed));
        }
    }
    return suite;
}

Evaluator::Evaluator(const BiObjectiveProblem& problem, Observer observer)
    : problem_(&problem), observer_(std::move(observer)) {}

Individual Evaluator::evaluate(DecisionVector x) {
    ObjectiveVector f = problem_->evaluate(x);
    Individual ind{std::move(x), std::move(f), ++count_};
    if (observer_) {
        observer_(ind);
    }
    return ind;
}

} // namespace emoa
