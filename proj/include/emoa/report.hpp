#pragma once

/// @file report.hpp
/// @brief Aggregation over a finished campaign directory: runtime ECDFs,
/// per-run diagnostics (trace monotonicity, replacement counts, population
/// indicator) and crossover scatter plots. Everything here reads files written
/// by run_campaign and writes CSV + SVG under <campaign>/reports.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emoa/campaign.hpp"

namespace emoa {

/// "dimension" (one curve set per n), "pooled" (all selected problems at once;
/// fails on mixed n) or "problem:<id>".
struct EcdfGrouping {
    enum class Kind { Dimension, Pooled, Problem } kind = Kind::Dimension;
    std::string problem_id;
};

EcdfGrouping parse_grouping(std::string_view text);

/// Ordinate of a step curve at budget b (0 before the first abscissa).
double ecdf_at(const EcdfCurve& curve, double b);

/// Writes reports/ecdf_<group>.csv (fevals_per_n, one column per algorithm) and
/// a matching SVG with log-x axis. An empty algorithm filter keeps every
/// algorithm; a filter that matches nothing is EMPTY_ALGORITHMS.
std::vector<std::filesystem::path> write_ecdf_report(const std::filesystem::path& campaign_dir,
                                                     const EcdfGrouping& grouping,
                                                     const std::vector<std::string>& algorithm_filter = {});

bool evals_strictly_increasing(const std::vector<TraceSample>& trace);
bool indicator_non_increasing(const std::vector<TraceSample>& trace);
bool hypervolume_non_decreasing(const std::vector<TraceSample>& trace);
/// cumulative_replacements == k * iteration at every sample.
bool replacements_linear(const std::vector<TraceSample>& trace, std::size_t k);

struct RunCheck {
    std::string algorithm;
    std::string problem_id;
    std::uint64_t seed = 0;
    bool evals_increasing = true;
    bool indicator_monotone = true;
    bool hv_monotone = true;
    std::optional<bool> replacements_linear; ///< BC runs only

    bool ok() const noexcept;
};

struct DiagnosticsReport {
    std::vector<RunCheck> checks;
    std::vector<std::filesystem::path> files;

    std::size_t failures() const noexcept;
};

/// Checks every run's trace, then writes reports/diagnostics_checks.csv,
/// reports/diagnostics_population.csv and one two-panel SVG per problem (first
/// seed of each algorithm). MISSING_TRACE if a trace file is absent or the
/// population indicator was not recorded.
DiagnosticsReport write_diagnostics(const std::filesystem::path& campaign_dir);

/// `count` children of `method` from the given 2-D parents, unbounded, with the
/// operator's standard parameters (SBX without mutation). SBX and BLX use the
/// first two parents; PCX, SPX and REX the first three.
std::vector<DecisionVector> scatter_children(CrossoverMethod method, const std::vector<DecisionVector>& parents,
                                             std::size_t count, std::uint64_t seed);

/// Reads parents (one row per parent, one column per variable) and writes
/// scatter.svg with one panel per operator plus scatter.csv with the children.
/// DIMENSION error unless the parents are 2-D.
std::vector<std::filesystem::path> write_scatter(const std::filesystem::path& parents_csv,
                                                 const std::filesystem::path& out_dir,
                                                 const std::vector<CrossoverMethod>& methods, std::uint64_t seed,
                                                 std::size_t count = 1000);

} // namespace emoa
