#pragma once

/// @file core.hpp
/// @brief Decision/objective space types, Pareto dominance and the seeded
/// random source shared by every other module.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace emoa {

/// Raised when a caller breaks an operation's precondition (size mismatch,
/// non-finite input, index out of range).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised for invalid run or campaign configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using DecisionVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;

/// Box constraints. Infinite bounds are allowed for crossover-only use.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds uniform(std::size_t n, double lo, double hi);
    static Bounds unbounded(std::size_t n);

    std::size_t dimension() const noexcept { return lower.size(); }
    bool contains(std::span<const double> x) const noexcept;
    void validate() const;
};

struct Individual {
    DecisionVector x;
    ObjectiveVector f;
    std::uint64_t eval_id = 0;
};

using Population = std::vector<Individual>;

/// True iff a is no worse than b everywhere and strictly better somewhere.
/// Comparisons are exact; there is no epsilon.
bool dominates(std::span<const double> a, std::span<const double> b);

/// True iff a[i] <= b[i] for every i.
bool weakly_dominates(std::span<const double> a, std::span<const double> b);

bool all_finite(std::span<const double> v) noexcept;

/// Seeded 64-bit random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the real-valued and normal draws are
/// computed here rather than with <random> distributions so that the same
/// seed gives the same numbers on every standard library.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed);

    static constexpr std::string_view algorithm() noexcept { return "mt19937_64"; }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n). Unbiased.
    std::size_t uniform_index(std::size_t n);
    /// Standard normal (Marsaglia polar method).
    double normal();
    /// k distinct indices drawn uniformly from [0, n), in draw order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::optional<double> spare_normal_;
};

/// Stateless splitmix64 finalizer used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Derives a seed from a base seed and a sequence of discriminators.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept;

} // namespace emoa
