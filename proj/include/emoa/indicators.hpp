#pragma once

/// @file indicators.hpp
/// @brief Unbounded external archive, exact 2-D hypervolume, the normalised
/// archive quality indicator with region-of-interest fallback, and runtime ECDFs.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <span>
#include <utility>
#include <vector>

#include "emoa/core.hpp"

namespace emoa {

struct ArchiveEntry {
    ObjectiveVector f;
    std::uint64_t eval_id = 0;
};

/// Unbounded store of mutually non-dominated bi-objective vectors.
/// Entries are kept sorted by the first objective (and therefore by the second,
/// descending). Insertion is O(log N + removed).
class Archive {
public:
    /// Rejects f if an entry weakly dominates it (so duplicates keep the earliest
    /// eval id); otherwise removes every entry f dominates and stores f. Removed
    /// entries are appended to `removed` when given, in ascending first objective.
    bool insert(const ObjectiveVector& f, std::uint64_t eval_id, std::vector<ArchiveEntry>* removed = nullptr);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::uint64_t removed_count() const noexcept { return removed_; }
    std::uint64_t offered_count() const noexcept { return offered_; }

    /// Entries in ascending first objective.
    std::vector<ArchiveEntry> entries() const;
    std::vector<ObjectiveVector> points() const;

    /// Entries keyed by first objective, for callers that need neighbour lookups.
    const std::map<double, ArchiveEntry>& sorted() const noexcept { return entries_; }

private:
    std::map<double, ArchiveEntry> entries_; // key: f[0]
    std::uint64_t removed_ = 0;
    std::uint64_t offered_ = 0;
};

/// Lebesgue measure of the region dominated by `points` and bounded by `ref`.
/// Points that do not strictly dominate ref contribute nothing.
double hypervolume_2d(std::span<const ObjectiveVector> points, const ObjectiveVector& ref);

struct IndicatorContext {
    ObjectiveVector ideal;
    ObjectiveVector nadir;
    double reference_hv = 1.0;

    void validate() const;
    /// (f - ideal) / (nadir - ideal), componentwise.
    ObjectiveVector normalize(std::span<const double> f) const;
};

/// Value reported for an empty point set.
double empty_indicator_value(const IndicatorContext& ctx) noexcept;

/// Euclidean distance from a normalised point to the box [0, 1]^2.
double distance_to_unit_box(std::span<const double> u) noexcept;

/// Lower is better. If any normalised point strictly dominates (1, 1) the value is
/// reference_hv minus the normalised hypervolume; otherwise reference_hv plus the
/// smallest distance to the region of interest. An empty set yields reference_hv + 1.
double icoco_value(std::span<const ObjectiveVector> points, const IndicatorContext& ctx);
double icoco_value(const Archive& archive, const IndicatorContext& ctx);

/// Owns a run's archive and keeps the normalised hypervolume and region-of-interest
/// distance up to date on every insertion. The hypervolume only ever grows by the
/// exact area newly covered, so the tracked indicator is non-increasing by construction.
class IndicatorTracker {
public:
    explicit IndicatorTracker(IndicatorContext ctx);

    bool offer(const ObjectiveVector& f, std::uint64_t eval_id);

    const Archive& archive() const noexcept { return archive_; }
    const IndicatorContext& context() const noexcept { return ctx_; }
    double normalized_hv() const noexcept { return hv_; }
    double value() const noexcept;

private:
    IndicatorContext ctx_;
    Archive archive_;
    double hv_ = 0.0;
    double min_distance_;
    bool in_region_ = false;
    std::vector<ArchiveEntry> evicted_;
};

/// The 58 indicator targets: 10^0 down to 10^-5 in steps of 0.1 decades, then
/// -10^-5 up to -10^-4.4. Ordered from easiest to hardest.
std::vector<double> icoco_targets();

/// One run's indicator over evaluations.
struct IndicatorTrace {
    std::size_t dimension = 0;
    std::vector<std::pair<std::uint64_t, double>> samples; ///< (evaluations, indicator), evaluations increasing
};

struct EcdfCurve {
    std::vector<double> abscissa; ///< FEvals / n, increasing
    std::vector<double> ordinate; ///< fraction of (run, target) pairs reached
};

/// Evaluations at which a trace first reaches `target`, if ever.
std::optional<std::uint64_t> first_hit(const IndicatorTrace& trace, double target);

/// Raw first-hit runtime ECDF (no bootstrapping). The abscissa is a 0.1-decade
/// grid in FEvals/n from 1/n up to max_fevals_per_n, merged with every exact hit
/// point, so the curve steps exactly where targets are reached. All traces must
/// share one dimension; ConfigError otherwise.
EcdfCurve ecdf(std::span<const IndicatorTrace> traces, std::span<const double> targets, double max_fevals_per_n);

} // namespace emoa
