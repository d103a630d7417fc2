#include "emoa/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace emoa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stable best-first order: front ascending, then `better(a, b)` on scores, then eval_id.
template <typename Better>
RankedSet order_by(std::span<const Individual> set, std::vector<RankKey> keys, Better better) {
    RankedSet ranked;
    ranked.order.resize(set.size());
    std::iota(ranked.order.begin(), ranked.order.end(), std::size_t{0});
    std::sort(ranked.order.begin(), ranked.order.end(), [&](std::size_t a, std::size_t b) {
        if (keys[a].front != keys[b].front) {
            return keys[a].front < keys[b].front;
        }
        if (better(keys[a].score, keys[b].score)) {
            return true;
        }
        if (better(keys[b].score, keys[a].score)) {
            return false;
        }
        if (set[a].eval_id != set[b].eval_id) {
            return set[a].eval_id < set[b].eval_id;
        }
        return a < b;
    });
    ranked.keys = std::move(keys);
    return ranked;
}

std::vector<ObjectiveVector> gather(std::span<const ObjectiveVector> points, const Front& members) {
    std::vector<ObjectiveVector> out;
    out.reserve(members.size());
    for (std::size_t i : members) {
        out.push_back(points[i]);
    }
    return out;
}

void require_uniform_length(std::span<const ObjectiveVector> points) {
    for (const auto& p : points) {
        if (p.size() != points.front().size()) {
            throw ContractViolation("ranking: objective vectors differ in length");
        }
    }
}

} // namespace

std::string_view to_string(RankingMethod method) noexcept {
    switch (method) {
    case RankingMethod::NS: return "NS";
    case RankingMethod::SM: return "SM";
    case RankingMethod::SP: return "SP";
    case RankingMethod::IB: return "IB";
    }
    return "?";
}

RankingMethod parse_ranking(std::string_view name) {
    for (auto m : {RankingMethod::NS, RankingMethod::SM, RankingMethod::SP, RankingMethod::IB}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw ConfigError("unknown ranking method '" + std::string(name) + "'");
}

std::vector<std::size_t> RankedSet::positions() const {
    std::vector<std::size_t> pos(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) {
        pos[order[p]] = p;
    }
    return pos;
}

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> set) {
    std::vector<ObjectiveVector> out;
    out.reserve(set.size());
    for (const auto& ind : set) {
        out.push_back(ind.f);
    }
    return out;
}

std::vector<Front> fast_nondominated_sort(std::span<const ObjectiveVector> points) {
    const std::size_t n = points.size();
    if (n == 0) {
        return {};
    }
    require_uniform_length(points);
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(points[p], points[q])) {
                dominated_by_me[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(points[q], points[p])) {
                dominated_by_me[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    std::vector<Front> fronts;
    Front current;
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) {
            current.push_back(p);
        }
    }
    while (!current.empty()) {
        Front next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated_by_me[p]) {
                if (--domination_count[q] == 0) {
                    next.push_back(q);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
    const std::size_t n = front.size();
    if (n <= 2) {
        return std::vector<double>(n, kInf);
    }
    require_uniform_length(front);
    const std::size_t m = front.front().size();
    std::vector<double> distance(n, 0.0);
    std::vector<std::size_t> idx(n);
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][obj] < front[b][obj]; });
        const double lo = front[idx.front()][obj];
        const double hi = front[idx.back()][obj];
        const double range = hi - lo;
        if (range <= 0.0) {
            continue;
        }
        // Neighbours are the nearest strictly smaller and larger values, so tied
        // members get equal distances whatever their input order.
        std::size_t begin = 0;
        while (begin < n) {
            const double v = front[idx[begin]][obj];
            std::size_t end = begin;
            while (end < n && front[idx[end]][obj] == v) {
                ++end;
            }
            const bool boundary = begin == 0 || end == n;
            const double gap = boundary ? kInf : (front[idx[end]][obj] - front[idx[begin - 1]][obj]) / range;
            for (std::size_t s = begin; s < end; ++s) {
                distance[idx[s]] += gap;
            }
            begin = end;
        }
    }
    return distance;
}

std::vector<double> hv_contribution_2d(std::span<const ObjectiveVector> front, const ObjectiveVector& ref) {
    if (ref.size() != 2) {
        throw ContractViolation("hv_contribution_2d: reference must be 2-D");
    }
    for (const auto& p : front) {
        if (p.size() != 2) {
            throw ContractViolation("hv_contribution_2d: points must be 2-D");
        }
    }
    const std::size_t n = front.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (front[a][0] != front[b][0]) {
            return front[a][0] < front[b][0];
        }
        if (front[a][1] != front[b][1]) {
            return front[a][1] < front[b][1];
        }
        return a < b;
    });
    std::vector<double> contribution(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        const auto& p = front[idx[s]];
        if (!(p[0] < ref[0] && p[1] < ref[1])) {
            continue;
        }
        const double right = s + 1 < n ? std::min(front[idx[s + 1]][0], ref[0]) : ref[0];
        const double top = s > 0 ? std::min(front[idx[s - 1]][1], ref[1]) : ref[1];
        contribution[idx[s]] = std::max(0.0, right - p[0]) * std::max(0.0, top - p[1]);
    }
    return contribution;
}

ObjectiveVector set_relative_reference(std::span<const ObjectiveVector> points) {
    if (points.empty()) {
        throw ContractViolation("set_relative_reference: empty set");
    }
    require_uniform_length(points);
    const std::size_t m = points.front().size();
    ObjectiveVector ref(m);
    for (std::size_t i = 0; i < m; ++i) {
        double lo = points.front()[i];
        double hi = lo;
        for (const auto& p : points) {
            lo = std::min(lo, p[i]);
            hi = std::max(hi, p[i]);
        }
        const double range = hi - lo;
        ref[i] = hi + (range > 0.0 ? 0.1 * range : 1.0);
    }
    return ref;
}

std::vector<double> spea2_fitness(std::span<const ObjectiveVector> points) {
    const std::size_t n = points.size();
    if (n < 2) {
        throw ContractViolation("spea2_fitness: need at least two points");
    }
    require_uniform_length(points);
    std::vector<std::size_t> strength(n, 0);
    std::vector<std::vector<std::size_t>> dominators(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dominates(points[i], points[j])) {
                ++strength[i];
                dominators[j].push_back(i);
            }
        }
    }
    const auto k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    std::vector<double> fitness(n, 0.0);
    std::vector<double> dist;
    dist.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        double raw = 0.0;
        for (std::size_t j : dominators[i]) {
            raw += static_cast<double>(strength[j]);
        }
        dist.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            double s = 0.0;
            for (std::size_t o = 0; o < points[i].size(); ++o) {
                const double d = points[i][o] - points[j][o];
                s += d * d;
            }
            dist.push_back(std::sqrt(s));
        }
        std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());
        const double sigma_k = dist[k - 1];
        fitness[i] = raw + 1.0 / (sigma_k + 2.0);
    }
    return fitness;
}

std::vector<double> ibea_fitness(std::span<const ObjectiveVector> points, const IbeaConfig& cfg) {
    const std::size_t n = points.size();
    if (n < 2) {
        throw ContractViolation("ibea_fitness: need at least two points");
    }
    if (!(cfg.kappa > 0.0)) {
        throw ConfigError("ibea: kappa must be positive");
    }
    require_uniform_length(points);
    const std::size_t m = points.front().size();
    std::vector<double> lo(m), scale(m);
    for (std::size_t o = 0; o < m; ++o) {
        double a = points.front()[o];
        double b = a;
        for (const auto& p : points) {
            a = std::min(a, p[o]);
            b = std::max(b, p[o]);
        }
        lo[o] = a;
        scale[o] = b > a ? 1.0 / (b - a) : 0.0;
    }
    std::vector<double> norm(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t o = 0; o < m; ++o) {
            norm[i * m + o] = (points[i][o] - lo[o]) * scale[o];
        }
    }
    // indicator[a * n + b] = I_eps+(a, b) = max_o (a_o - b_o)
    std::vector<double> indicator(n * n, 0.0);
    double c = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            double v = -kInf;
            for (std::size_t o = 0; o < m; ++o) {
                v = std::max(v, norm[a * m + o] - norm[b * m + o]);
            }
            indicator[a * n + b] = v;
            if (a != b) {
                c = std::max(c, std::abs(v));
            }
        }
    }
    if (c == 0.0) {
        c = 1.0;
    }
    const double denom = c * cfg.kappa;
    std::vector<double> fitness(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double f = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                f -= std::exp(-indicator[j * n + i] / denom);
            }
        }
        fitness[i] = f;
    }
    return fitness;
}

RankedSet rank_ns(std::span<const Individual> set) {
    const auto points = objectives_of(set);
    std::vector<RankKey> keys(set.size());
    const auto fronts = fast_nondominated_sort(points);
    for (std::size_t level = 0; level < fronts.size(); ++level) {
        const auto crowd = crowding_distance(gather(points, fronts[level]));
        for (std::size_t s = 0; s < fronts[level].size(); ++s) {
            keys[fronts[level][s]] = {level, crowd[s]};
        }
    }
    return order_by(set, std::move(keys), std::greater<>{});
}

RankedSet rank_sm(std::span<const Individual> set, const ObjectiveVector& ref) {
    const auto points = objectives_of(set);
    std::vector<RankKey> keys(set.size());
    const auto fronts = fast_nondominated_sort(points);
    for (std::size_t level = 0; level < fronts.size(); ++level) {
        const auto contrib = hv_contribution_2d(gather(points, fronts[level]), ref);
        for (std::size_t s = 0; s < fronts[level].size(); ++s) {
            keys[fronts[level][s]] = {level, contrib[s]};
        }
    }
    return order_by(set, std::move(keys), std::greater<>{});
}

RankedSet rank_sp(std::span<const Individual> set) {
    const auto fitness = spea2_fitness(objectives_of(set));
    std::vector<RankKey> keys(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        keys[i] = {0, fitness[i]};
    }
    return order_by(set, std::move(keys), std::less<>{});
}

RankedSet rank_ib(std::span<const Individual> set, const IbeaConfig& cfg) {
    const auto fitness = ibea_fitness(objectives_of(set), cfg);
    std::vector<RankKey> keys(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        keys[i] = {0, fitness[i]};
    }
    return order_by(set, std::move(keys), std::greater<>{});
}

RankedSet rank(RankingMethod method, std::span<const Individual> set, const RankingContext& ctx) {
    if (set.empty()) {
        return {};
    }
    if (set.size() == 1) {
        return RankedSet{{0}, {RankKey{}}};
    }
    switch (method) {
    case RankingMethod::NS: return rank_ns(set);
    case RankingMethod::SM: {
        if (ctx.hv_reference) {
            return rank_sm(set, *ctx.hv_reference);
        }
        return rank_sm(set, set_relative_reference(objectives_of(set)));
    }
    case RankingMethod::SP: return rank_sp(set);
    case RankingMethod::IB: return rank_ib(set, ctx.ibea);
    }
    throw ConfigError("rank: unknown ranking method");
}

} // namespace emoa
