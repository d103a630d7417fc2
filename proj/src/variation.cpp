#include "emoa/variation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace emoa {

namespace {

constexpr double kDegenerate = 1e-12;

void require_parent_set(std::span<const DecisionVector> parents, std::size_t min_count, const char* op) {
    if (parents.size() < min_count) {
        throw ContractViolation(std::string(op) + ": too few parents");
    }
    const std::size_t n = parents.front().size();
    for (const auto& p : parents) {
        if (p.size() != n) {
            throw ContractViolation(std::string(op) + ": parents differ in length");
        }
    }
}

void require_pair(std::span<const double> p1, std::span<const double> p2, const char* op) {
    if (p1.size() != p2.size()) {
        throw ContractViolation(std::string(op) + ": parents differ in length");
    }
}

DecisionVector mean_of(std::span<const DecisionVector> parents) {
    DecisionVector g(parents.front().size(), 0.0);
    for (const auto& p : parents) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            g[j] += p[j];
        }
    }
    const double inv = 1.0 / static_cast<double>(parents.size());
    for (double& v : g) {
        v *= inv;
    }
    return g;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s += a[j] * b[j];
    }
    return s;
}

} // namespace

std::string_view to_string(CrossoverMethod method) noexcept {
    switch (method) {
    case CrossoverMethod::SBX: return "SBX";
    case CrossoverMethod::BLX: return "BLX";
    case CrossoverMethod::PCX: return "PCX";
    case CrossoverMethod::SPX: return "SPX";
    case CrossoverMethod::REX: return "REX";
    }
    return "?";
}

CrossoverMethod parse_crossover(std::string_view name) {
    for (auto m : {CrossoverMethod::SBX, CrossoverMethod::BLX, CrossoverMethod::PCX, CrossoverMethod::SPX,
                   CrossoverMethod::REX}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw ConfigError("unknown crossover method '" + std::string(name) + "'");
}

CrossoverConfig CrossoverConfig::for_method(CrossoverMethod method, std::size_t n) {
    if (n == 0) {
        throw ConfigError("crossover: dimension must be positive");
    }
    CrossoverConfig cfg;
    cfg.method = method;
    cfg.p_m = 1.0 / static_cast<double>(n);
    const bool multi_parent =
        method == CrossoverMethod::PCX || method == CrossoverMethod::SPX || method == CrossoverMethod::REX;
    cfg.k = multi_parent ? n + 1 : 2;
    cfg.epsilon = std::sqrt(static_cast<double>(n) + 2.0);
    cfg.sigma_sq = 1.0 / static_cast<double>(cfg.k - 1);
    return cfg;
}

void CrossoverConfig::validate() const {
    if (k < 2) {
        throw ConfigError("crossover: k must be at least 2");
    }
    if ((method == CrossoverMethod::SBX || method == CrossoverMethod::BLX) && k != 2) {
        throw ConfigError("crossover: SBX and BLX take exactly two parents");
    }
    if (!(eta_c > 0.0) || !(eta_m > 0.0)) {
        throw ConfigError("crossover: distribution indices must be positive");
    }
    if (p_c < 0.0 || p_c > 1.0 || p_m < 0.0 || p_m > 1.0) {
        throw ConfigError("crossover: rates must lie in [0, 1]");
    }
    if (alpha < 0.0 || sigma_zeta_sq < 0.0 || sigma_eta_sq < 0.0 || sigma_sq < 0.0 || epsilon < 0.0) {
        throw ConfigError("crossover: variances and expansion factors must be non-negative");
    }
}

void clamp_to_bounds(std::span<double> x, const Bounds& bounds) {
    for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = std::clamp(x[j], bounds.lower[j], bounds.upper[j]);
    }
}

double sbx_spread_factor(double u, double eta_c) noexcept {
    const double e = 1.0 / (eta_c + 1.0);
    if (u <= 0.5) {
        return std::pow(2.0 * u, e);
    }
    return std::pow(1.0 / (2.0 * (1.0 - u)), e);
}

std::pair<DecisionVector, DecisionVector> sbx_pair(std::span<const double> p1, std::span<const double> p2,
                                                   const CrossoverConfig& cfg, const Bounds& bounds,
                                                   RandomSource& rng) {
    require_pair(p1, p2, "sbx");
    DecisionVector c1(p1.begin(), p1.end());
    DecisionVector c2(p2.begin(), p2.end());
    for (std::size_t j = 0; j < p1.size(); ++j) {
        if (rng.uniform() >= cfg.p_c || p1[j] == p2[j]) {
            continue;
        }
        const double beta = sbx_spread_factor(rng.uniform(), cfg.eta_c);
        c1[j] = 0.5 * ((1.0 + beta) * p1[j] + (1.0 - beta) * p2[j]);
        c2[j] = 0.5 * ((1.0 - beta) * p1[j] + (1.0 + beta) * p2[j]);
    }
    clamp_to_bounds(c1, bounds);
    clamp_to_bounds(c2, bounds);
    return {std::move(c1), std::move(c2)};
}

double polynomial_mutation_step(double x, double lower, double upper, double u, double eta_m) noexcept {
    const double range = upper - lower;
    const double delta1 = (x - lower) / range;
    const double delta2 = (upper - x) / range;
    const double power = 1.0 / (eta_m + 1.0);
    double deltaq = 0.0;
    if (u < 0.5) {
        const double xy = 1.0 - delta1;
        const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta_m + 1.0);
        deltaq = std::pow(val, power) - 1.0;
    } else {
        const double xy = 1.0 - delta2;
        const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta_m + 1.0);
        deltaq = 1.0 - std::pow(val, power);
    }
    return std::clamp(x + deltaq * range, lower, upper);
}

DecisionVector polynomial_mutation(std::span<const double> x, const Bounds& bounds, const CrossoverConfig& cfg,
                                   RandomSource& rng) {
    if (x.size() != bounds.dimension()) {
        throw ContractViolation("polynomial_mutation: length does not match bounds");
    }
    DecisionVector y(x.begin(), x.end());
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (rng.uniform() >= cfg.p_m) {
            continue;
        }
        y[j] = polynomial_mutation_step(y[j], bounds.lower[j], bounds.upper[j], rng.uniform(), cfg.eta_m);
    }
    return y;
}

DecisionVector blx_alpha(std::span<const double> p1, std::span<const double> p2, const CrossoverConfig& cfg,
                         const Bounds& bounds, RandomSource& rng) {
    require_pair(p1, p2, "blx");
    DecisionVector child(p1.size());
    for (std::size_t j = 0; j < p1.size(); ++j) {
        const double spread = cfg.alpha * std::abs(p1[j] - p2[j]);
        const double lo = std::min(p1[j], p2[j]) - spread;
        const double hi = std::max(p1[j], p2[j]) + spread;
        child[j] = rng.uniform(lo, hi);
    }
    clamp_to_bounds(child, bounds);
    return child;
}

DecisionVector pcx(std::span<const DecisionVector> parents, std::size_t center, const CrossoverConfig& cfg,
                   const Bounds& bounds, RandomSource& rng) {
    require_parent_set(parents, 2, "pcx");
    if (center >= parents.size()) {
        throw ContractViolation("pcx: center index out of range");
    }
    const std::size_t n = parents.front().size();
    const DecisionVector& xp = parents[center];
    const DecisionVector g = mean_of(parents);

    DecisionVector d(n);
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = xp[j] - g[j];
    }
    const double d_norm = std::sqrt(dot(d, d));
    const double sigma_zeta = std::sqrt(cfg.sigma_zeta_sq);
    const double sigma_eta = std::sqrt(cfg.sigma_eta_sq);
    DecisionVector child = xp;

    if (d_norm < kDegenerate) {
        // No direction: isotropic spread scaled by the mean distance of the others.
        double mean_dist = 0.0;
        for (std::size_t i = 0; i < parents.size(); ++i) {
            if (i == center) {
                continue;
            }
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double v = parents[i][j] - xp[j];
                s += v * v;
            }
            mean_dist += std::sqrt(s);
        }
        mean_dist /= static_cast<double>(parents.size() - 1);
        if (mean_dist >= kDegenerate) {
            for (std::size_t j = 0; j < n; ++j) {
                child[j] += sigma_eta * mean_dist * rng.normal();
            }
        }
        clamp_to_bounds(child, bounds);
        return child;
    }

    DecisionVector unit(n);
    for (std::size_t j = 0; j < n; ++j) {
        unit[j] = d[j] / d_norm;
    }
    double mean_perp = 0.0;
    DecisionVector dev(n);
    for (std::size_t i = 0; i < parents.size(); ++i) {
        if (i == center) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            dev[j] = parents[i][j] - g[j];
        }
        const double along = dot(dev, unit);
        const double sq = std::max(0.0, dot(dev, dev) - along * along);
        mean_perp += std::sqrt(sq);
    }
    mean_perp /= static_cast<double>(parents.size() - 1);

    // sum_i w_i e_i over an orthonormal basis of the complement of d has the same
    // law as projecting an isotropic Normal vector onto that complement.
    const double w_zeta = sigma_zeta * rng.normal();
    DecisionVector xi(n);
    for (double& v : xi) {
        v = rng.normal();
    }
    const double xi_along = dot(xi, unit);
    const double perp_scale = sigma_eta * mean_perp;
    for (std::size_t j = 0; j < n; ++j) {
        child[j] += w_zeta * d[j] + perp_scale * (xi[j] - xi_along * unit[j]);
    }
    clamp_to_bounds(child, bounds);
    return child;
}

DecisionVector spx(std::span<const DecisionVector> parents, const CrossoverConfig& cfg, const Bounds& bounds,
                   RandomSource& rng) {
    require_parent_set(parents, 2, "spx");
    const std::size_t n = parents.front().size();
    const std::size_t k = parents.size();
    const DecisionVector g = mean_of(parents);

    std::vector<DecisionVector> y(k, DecisionVector(n));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            y[i][j] = g[j] + cfg.epsilon * (parents[i][j] - g[j]);
        }
    }
    DecisionVector c(n, 0.0);
    for (std::size_t i = 1; i < k; ++i) {
        const double r = std::pow(rng.uniform(), 1.0 / static_cast<double>(i));
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = r * (y[i - 1][j] - y[i][j] + c[j]);
        }
    }
    DecisionVector child(n);
    for (std::size_t j = 0; j < n; ++j) {
        child[j] = y[k - 1][j] + c[j];
    }
    clamp_to_bounds(child, bounds);
    return child;
}

DecisionVector rex(std::span<const DecisionVector> parents, const CrossoverConfig& cfg, const Bounds& bounds,
                   RandomSource& rng) {
    require_parent_set(parents, 2, "rex");
    const std::size_t n = parents.front().size();
    const DecisionVector g = mean_of(parents);
    const double sigma = std::sqrt(cfg.sigma_sq);
    DecisionVector child = g;
    for (const auto& p : parents) {
        const double xi = sigma * rng.normal();
        for (std::size_t j = 0; j < n; ++j) {
            child[j] += xi * (p[j] - g[j]);
        }
    }
    clamp_to_bounds(child, bounds);
    return child;
}

std::vector<Individual> generate_children(std::span<const Individual> parents, std::size_t lambda,
                                          const CrossoverConfig& cfg, Evaluator& evaluator, RandomSource& rng) {
    if (lambda == 0) {
        throw ConfigError("generate_children: lambda must be at least 1");
    }
    if (parents.size() != cfg.k) {
        throw ContractViolation("generate_children: parent count differs from k");
    }
    const Bounds& bounds = evaluator.problem().bounds();
    std::vector<Individual> children;
    children.reserve(lambda);

    if (cfg.method == CrossoverMethod::SBX) {
        if (lambda % 2 != 0) {
            throw ConfigError("generate_children: SBX needs an even lambda");
        }
        for (std::size_t i = 0; i < lambda / 2; ++i) {
            auto [c1, c2] = sbx_pair(parents[0].x, parents[1].x, cfg, bounds, rng);
            children.push_back(evaluator.evaluate(polynomial_mutation(c1, bounds, cfg, rng)));
            children.push_back(evaluator.evaluate(polynomial_mutation(c2, bounds, cfg, rng)));
        }
        return children;
    }

    std::vector<DecisionVector> xs;
    xs.reserve(parents.size());
    for (const auto& p : parents) {
        xs.push_back(p.x);
    }
    for (std::size_t i = 0; i < lambda; ++i) {
        DecisionVector child;
        switch (cfg.method) {
        case CrossoverMethod::BLX: child = blx_alpha(xs[0], xs[1], cfg, bounds, rng); break;
        case CrossoverMethod::PCX: child = pcx(xs, i % xs.size(), cfg, bounds, rng); break;
        case CrossoverMethod::SPX: child = spx(xs, cfg, bounds, rng); break;
        case CrossoverMethod::REX: child = rex(xs, cfg, bounds, rng); break;
        case CrossoverMethod::SBX: break;
        }
        children.push_back(evaluator.evaluate(std::move(child)));
    }
    return children;
}

} // namespace emoa
