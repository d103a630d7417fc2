#pragma once

/// @file problems.hpp
/// @brief Bi-objective test problems built by pairing two shifted (and
/// optionally rotated) single-objective base functions.
///
/// Every problem lives on [-5, 5]^n. Each objective is g(z) with
/// z = R (x - shift); the base functions are zero at z = 0, so objective i
/// reaches its minimum 0 at its own shift. The nadir point is estimated from
/// the value of each objective at the other objective's optimum.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emoa/core.hpp"

namespace emoa {

enum class BaseKind { Sphere, Ellipsoid, Rastrigin, Rosenbrock, SharpRidge, DifferentPowers };

std::string_view to_string(BaseKind kind) noexcept;

/// Raw base function value at an already transformed point z.
double base_value(BaseKind kind, std::span<const double> z);

struct InstanceTransform {
    DecisionVector shift;
    /// Row-major n x n orthogonal matrix; empty means identity.
    std::vector<double> rotation;
    std::uint64_t instance_seed = 0;

    bool rotated() const noexcept { return !rotation.empty(); }
    /// z = R (x - shift)
    void apply(std::span<const double> x, std::span<double> z) const;
};

struct ObjectiveComponent {
    BaseKind kind = BaseKind::Sphere;
    InstanceTransform transform;

    double value(std::span<const double> x) const;
};

/// One of the shipped base-function pairings.
struct PairSpec {
    std::string_view key; ///< short id, e.g. "p06"
    std::string_view name;
    BaseKind first;
    bool first_rotated;
    BaseKind second;
    bool second_rotated;
};

std::span<const PairSpec> shipped_pairs() noexcept;

class BiObjectiveProblem {
public:
    BiObjectiveProblem(std::string id, std::size_t pair_index, std::size_t n,
                       ObjectiveComponent g1, ObjectiveComponent g2, std::uint64_t instance_seed);

    const std::string& id() const noexcept { return id_; }
    const PairSpec& pair() const noexcept;
    std::size_t pair_index() const noexcept { return pair_index_; }
    std::size_t dimension() const noexcept { return n_; }
    const Bounds& bounds() const noexcept { return bounds_; }
    const ObjectiveComponent& g1() const noexcept { return g1_; }
    const ObjectiveComponent& g2() const noexcept { return g2_; }
    const ObjectiveVector& ideal() const noexcept { return ideal_; }
    const ObjectiveVector& nadir() const noexcept { return nadir_; }
    std::uint64_t instance_seed() const noexcept { return instance_seed_; }

    /// (g1(x), g2(x)). x may lie outside the bounds; it must be finite.
    ObjectiveVector evaluate(std::span<const double> x) const;

private:
    std::string id_;
    std::size_t pair_index_;
    std::size_t n_;
    Bounds bounds_;
    ObjectiveComponent g1_;
    ObjectiveComponent g2_;
    ObjectiveVector ideal_;
    ObjectiveVector nadir_;
    std::uint64_t instance_seed_;
};

struct ProblemSuite {
    std::vector<BiObjectiveProblem> problems;
    std::vector<std::size_t> dims;
    std::uint64_t suite_seed = 0;

    /// Throws ConfigError for an unknown id.
    const BiObjectiveProblem& find(std::string_view id) const;
};

/// Problem id for a pair/dimension combination, e.g. "p06_d20".
std::string problem_id(std::size_t pair_index, std::size_t n);

BiObjectiveProblem make_problem(std::size_t pair_index, std::size_t n, std::uint64_t suite_seed);

/// All shipped pairs at every requested dimension, ordered by dimension then pair.
ProblemSuite make_suite(std::span<const std::size_t> dims, std::uint64_t suite_seed);

/// Seeded orthogonal matrix (QR of a standard-normal matrix, signs fixed so R has a positive diagonal).
std::vector<double> random_rotation(std::size_t n, RandomSource& rng);

/// Evaluates decision vectors against a problem and hands out sequential eval ids.
/// The optional observer sees every individual the moment it is evaluated.
class Evaluator {
public:
    using Observer = std::function<void(const Individual&)>;

    explicit Evaluator(const BiObjectiveProblem& problem, Observer observer = {});

    Individual evaluate(DecisionVector x);
    std::uint64_t count() const noexcept { return count_; }
    const BiObjectiveProblem& problem() const noexcept { return *problem_; }

private:
    const BiObjectiveProblem* problem_;
    Observer observer_;
    std::uint64_t count_ = 0;
};

} // namespace emoa
