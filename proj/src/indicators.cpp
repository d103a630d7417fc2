#include "emoa/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>

namespace emoa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_2d(std::span<const double> f, const char* what) {
    if (f.size() != 2) {
        throw ContractViolation(std::string(what) + ": only bi-objective vectors are supported");
    }
}

} // namespace

bool Archive::insert(const ObjectiveVector& f, std::uint64_t eval_id, std::vector<ArchiveEntry>* removed) {
    require_2d(f, "archive");
    if (!all_finite(f)) {
        throw ContractViolation("archive: objective vector is not finite");
    }
    ++offered_;
    auto after = entries_.upper_bound(f[0]);
    if (after != entries_.begin()) {
        const auto& pred = std::prev(after)->second.f;
        if (pred[1] <= f[1]) {
            return false;
        }
    }
    auto it = entries_.lower_bound(f[0]);
    while (it != entries_.end() && it->second.f[1] >= f[1]) {
        if (removed) {
            removed->push_back(std::move(it->second));
        }
        it = entries_.erase(it);
        ++removed_;
    }
    entries_.emplace_hint(it, f[0], ArchiveEntry{f, eval_id});
    return true;
}

std::vector<ArchiveEntry> Archive::entries() const {
    std::vector<ArchiveEntry> out;
    out.reserve(entries_.size());
    for (const auto& [key, e] : entries_) {
        out.push_back(e);
    }
    return out;
}

std::vector<ObjectiveVector> Archive::points() const {
    std::vector<ObjectiveVector> out;
    out.reserve(entries_.size());
    for (const auto& [key, e] : entries_) {
        out.push_back(e.f);
    }
    return out;
}

double hypervolume_2d(std::span<const ObjectiveVector> points, const ObjectiveVector& ref) {
    require_2d(ref, "hypervolume_2d");
    std::vector<std::pair<double, double>> inside;
    inside.reserve(points.size());
    for (const auto& p : points) {
        require_2d(p, "hypervolume_2d");
        if (p[0] < ref[0] && p[1] < ref[1]) {
            inside.emplace_back(p[0], p[1]);
        }
    }
    std::sort(inside.begin(), inside.end());
    double volume = 0.0;
    double top = ref[1];
    for (const auto& [x, y] : inside) {
        if (y < top) {
            volume += (ref[0] - x) * (top - y);
            top = y;
        }
    }
    return volume;
}

void IndicatorContext::validate() const {
    if (ideal.size() != 2 || nadir.size() != 2) {
        throw ContractViolation("indicator context: ideal and nadir must be 2-D");
    }
    for (std::size_t i = 0; i < 2; ++i) {
        if (!(ideal[i] < nadir[i])) {
            throw ContractViolation("indicator context: ideal must lie strictly below nadir");
        }
    }
    if (!(reference_hv > 0.0 && reference_hv <= 1.0)) {
        throw ContractViolation("indicator context: reference_hv must lie in (0, 1]");
    }
}

ObjectiveVector IndicatorContext::normalize(std::span<const double> f) const {
    ObjectiveVector u(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        u[i] = (f[i] - ideal[i]) / (nadir[i] - ideal[i]);
    }
    return u;
}

double empty_indicator_value(const IndicatorContext& ctx) noexcept {
    return ctx.reference_hv + 1.0;
}

double distance_to_unit_box(std::span<const double> u) noexcept {
    double s = 0.0;
    for (double v : u) {
        const double d = v > 1.0 ? v - 1.0 : (v < 0.0 ? -v : 0.0);
        s += d * d;
    }
    return std::sqrt(s);
}

double icoco_value(std::span<const ObjectiveVector> points, const IndicatorContext& ctx) {
    if (points.empty()) {
        return empty_indicator_value(ctx);
    }
    std::vector<ObjectiveVector> normalized;
    normalized.reserve(points.size());
    bool in_region = false;
    double nearest = kInf;
    for (const auto& p : points) {
        auto u = ctx.normalize(p);
        in_region = in_region || (u[0] < 1.0 && u[1] < 1.0);
        nearest = std::min(nearest, distance_to_unit_box(u));
        normalized.push_back(std::move(u));
    }
    if (in_region) {
        return ctx.reference_hv - hypervolume_2d(normalized, {1.0, 1.0});
    }
    return ctx.reference_hv + nearest;
}

double icoco_value(const Archive& archive, const IndicatorContext& ctx) {
    return icoco_value(archive.points(), ctx);
}

IndicatorTracker::IndicatorTracker(IndicatorContext ctx) : ctx_(std::move(ctx)), min_distance_(kInf) {
    ctx_.validate();
}

bool IndicatorTracker::offer(const ObjectiveVector& f, std::uint64_t eval_id) {
    evicted_.clear();
    if (!archive_.insert(f, eval_id, &evicted_)) {
        return false;
    }
    const auto u = ctx_.normalize(f);
    min_distance_ = std::min(min_distance_, distance_to_unit_box(u));
    if (!(u[0] < 1.0 && u[1] < 1.0)) {
        return true;
    }
    in_region_ = true;
    // Newly covered area: the box from u to the nearest remaining neighbours
    // (capped at 1), minus what the evicted entries already covered inside it.
    const auto& sorted = archive_.sorted();
    const auto self = sorted.find(f[0]);
    double right = 1.0;
    double top = 1.0;
    if (const auto next = std::next(self); next != sorted.end()) {
        right = std::min(1.0, ctx_.normalize(next->second.f)[0]);
    }
    if (self != sorted.begin()) {
        top = std::min(1.0, ctx_.normalize(std::prev(self)->second.f)[1]);
    }
    double covered = 0.0;
    double ceiling = top;
    for (const auto& e : evicted_) {
        const auto v = ctx_.normalize(e.f);
        if (v[0] < right && v[1] < ceiling) {
            covered += (right - v[0]) * (ceiling - v[1]);
            ceiling = v[1];
        }
    }
    hv_ += std::max(0.0, std::max(0.0, right - u[0]) * std::max(0.0, top - u[1]) - covered);
    return true;
}

double IndicatorTracker::value() const noexcept {
    if (archive_.empty()) {
        return empty_indicator_value(ctx_);
    }
    if (in_region_) {
        return ctx_.reference_hv - hv_;
    }
    return ctx_.reference_hv + min_distance_;
}

std::vector<double> icoco_targets() {
    std::vector<double> targets;
    targets.reserve(58);
    for (int i = 0; i <= 50; ++i) {
        targets.push_back(std::pow(10.0, -0.1 * i));
    }
    for (int i = 50; i >= 44; --i) {
        targets.push_back(-std::pow(10.0, -0.1 * i));
    }
    return targets;
}

std::optional<std::uint64_t> first_hit(const IndicatorTrace& trace, double target) {
    for (const auto& [evals, value] : trace.samples) {
        if (value <= target) {
            return evals;
        }
    }
    return std::nullopt;
}

EcdfCurve ecdf(std::span<const IndicatorTrace> traces, std::span<const double> targets, double max_fevals_per_n) {
    EcdfCurve curve;
    if (traces.empty()) {
        return curve;
    }
    const std::size_t n = traces.front().dimension;
    if (n == 0) {
        throw ConfigError("ecdf: trace without a dimension");
    }
    for (const auto& t : traces) {
        if (t.dimension != n) {
            throw ConfigError("ecdf: traces mix dimensions; aggregate one dimension at a time");
        }
    }
    const double dn = static_cast<double>(n);
    std::vector<double> hits;
    for (const auto& t : traces) {
        for (double target : targets) {
            if (auto e = first_hit(t, target)) {
                hits.push_back(static_cast<double>(*e) / dn);
            }
        }
    }
    std::sort(hits.begin(), hits.end());

    const double lo = 1.0 / dn;
    const double hi = std::max(max_fevals_per_n, lo);
    std::vector<double> grid{lo, hi};
    const int first = static_cast<int>(std::floor(std::log10(lo) * 10.0));
    const int last = static_cast<int>(std::ceil(std::log10(hi) * 10.0));
    for (int e = first; e <= last; ++e) {
        const double b = std::pow(10.0, 0.1 * e);
        if (b > lo && b < hi) {
            grid.push_back(b);
        }
    }
    grid.insert(grid.end(), hits.begin(), hits.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const double total = static_cast<double>(traces.size() * targets.size());
    curve.abscissa = grid;
    curve.ordinate.reserve(grid.size());
    for (double b : grid) {
        const auto reached = std::upper_bound(hits.begin(), hits.end(), b) - hits.begin();
        curve.ordinate.push_back(total > 0.0 ? static_cast<double>(reached) / total : 0.0);
    }
    return curve;
}

} // namespace emoa
