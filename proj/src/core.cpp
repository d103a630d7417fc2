#include "emoa/core.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace emoa {

Bounds Bounds::uniform(std::size_t n, double lo, double hi) {
    Bounds b{std::vector<double>(n, lo), std::vector<double>(n, hi)};
    b.validate();
    return b;
}

Bounds Bounds::unbounded(std::size_t n) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return Bounds{std::vector<double>(n, -inf), std::vector<double>(n, inf)};
}

bool Bounds::contains(std::span<const double> x) const noexcept {
    if (x.size() != lower.size()) {
        return false;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] < lower[j] || x[j] > upper[j]) {
            return false;
        }
    }
    return true;
}

void Bounds::validate() const {
    if (lower.size() != upper.size()) {
        throw ContractViolation("bounds: lower and upper differ in length");
    }
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] < upper[j])) {
            throw ContractViolation("bounds: lower must be strictly below upper in every coordinate");
        }
    }
}

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ContractViolation("dominance: objective vectors differ in length");
    }
}

} // namespace

bool dominates(std::span<const double> a, std::span<const double> b) {
    require_same_length(a, b);
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
        if (a[i] < b[i]) {
            strictly_better = true;
        }
    }
    return strictly_better;
}

bool weakly_dominates(std::span<const double> a, std::span<const double> b) {
    require_same_length(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

bool all_finite(std::span<const double> v) noexcept {
    for (double x : v) {
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return true;
}

RandomSource::RandomSource(std::uint64_t seed) : engine_(seed), seed_(seed) {}

double RandomSource::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

std::size_t RandomSource::uniform_index(std::size_t n) {
    if (n == 0) {
        throw ContractViolation("uniform_index: empty range");
    }
    const std::uint64_t range = n;
    const std::uint64_t threshold = (0 - range) % range;
    for (;;) {
        const std::uint64_t r = engine_();
        if (r >= threshold) {
            return static_cast<std::size_t>(r % range);
        }
    }
}

double RandomSource::normal() {
    if (spare_normal_) {
        const double v = *spare_normal_;
        spare_normal_.reset();
        return v;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * scale;
    return u * scale;
}

std::vector<std::size_t> RandomSource::sample_without_replacement(std::size_t n, std::size_t k) {
    if (k > n) {
        throw ContractViolation("sample_without_replacement: k exceeds n");
    }
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + uniform_index(n - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = mix_seed(base);
    for (std::uint64_t p : parts) {
        h = mix_seed(h ^ mix_seed(p));
    }
    return h;
}

} // namespace emoa
