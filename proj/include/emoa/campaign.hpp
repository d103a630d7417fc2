#pragma once

/// @file campaign.hpp
/// @brief Algorithm x problem x seed grids: config grammar, presets, reference
/// values, the resumable runner and the per-run CSV files it writes.
///
/// Output layout under the campaign directory:
///   campaign.cfg                      canonical copy of the config
///   reference.csv                     unless `reference` points elsewhere
///   runs/<alg>/<problem>/s<seed>_trace.csv
///   runs/<alg>/<problem>/s<seed>_archive.csv
///   runs/<alg>/<problem>/s<seed>_meta.csv   written last; marks the cell complete
///   manifest.csv, summary.csv

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emoa/engine.hpp"
#include "emoa/problems.hpp"

namespace emoa {

/// Error surfaced by the command line as "error <code>: <message>".
class CliError : public std::runtime_error {
public:
    CliError(std::string code, const std::string& message);
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// "X-Y-Z" (selection-crossover-ranking) or one of NSGA-II, SPEA2, SMS-EMOA, IBEA,
/// optionally followed by "@lambda=<c>n".
struct AlgorithmSpec {
    std::string name;
    LoopKind loop = LoopKind::Simple;
    SelectionScheme selection = SelectionScheme::BA;
    CrossoverMethod crossover = CrossoverMethod::SPX;
    RankingMethod ranking = RankingMethod::NS;
    std::size_t lambda_per_n = 0; ///< 0 keeps the default (10n, or mu for the generational loop)

    RunConfig make_config(std::size_t n) const;
    /// Filesystem-safe form of the name.
    std::string directory_name() const;
};

AlgorithmSpec parse_algorithm(std::string_view text);

/// core, originals, lambda-sweep, crossovers, rankings.
std::vector<AlgorithmSpec> algorithm_preset(std::string_view name);
std::vector<std::string_view> preset_names();

struct CampaignConfig {
    std::vector<std::size_t> dims{2, 10};
    std::vector<std::string> problems; ///< pair keys ("p06") or ids ("p06_d10"); empty selects all
    std::vector<AlgorithmSpec> algorithms;
    std::vector<std::uint64_t> explicit_seeds; ///< overrides seed_base/seed_count when non-empty
    std::size_t seed_count = 15;
    std::uint64_t seed_base = 1;
    std::uint64_t budget_multiplier = 10000;
    std::uint64_t suite_seed = 1;
    std::filesystem::path output = "campaign";
    std::filesystem::path reference; ///< empty means <output>/reference.csv
    bool record_population_indicator = false;
    std::size_t record_interval = 0;
    std::size_t workers = 1;
    std::uint64_t reference_budget_multiplier = 100000;
    std::size_t reference_seed_count = 15;
    std::uint64_t reference_seed_base = 100001;
    std::vector<AlgorithmSpec> reference_algorithms; ///< empty means the campaign's algorithms

    std::vector<std::uint64_t> seeds() const;
    std::filesystem::path reference_path() const;
    const std::vector<AlgorithmSpec>& effective_reference_algorithms() const;
    /// CliError CONFIG / EMPTY_ALGORITHMS.
    void validate() const;
    ProblemSuite suite() const;
    std::vector<const BiObjectiveProblem*> selected(const ProblemSuite& suite) const;
    /// Config grammar text that parses back to an equal config.
    std::string to_text() const;
};

/// Line-oriented "key = value" grammar; '#' starts a comment; lists are comma
/// separated. Errors name the offending key (CliError CONFIG).
CampaignConfig parse_campaign_config(std::string_view text);
CampaignConfig load_campaign_config(const std::filesystem::path& path);

struct ReferenceRow {
    std::string problem_id;
    std::size_t n = 0;
    ObjectiveVector ideal;
    ObjectiveVector nadir;
    double reference_hv = 1.0;
    std::uint64_t campaign_seed = 0;
};

struct ReferenceTable {
    std::vector<ReferenceRow> rows;
    std::uint64_t content_hash = 0;

    const ReferenceRow* find(std::string_view problem_id) const noexcept;
};

/// CliError MISSING_REFERENCE when the file does not exist.
ReferenceTable read_reference(const std::filesystem::path& path);

/// Union of the final archives of every reference algorithm and seed at
/// reference_budget_multiplier * n evaluations; reference_hv is its normalised
/// hypervolume. Writes config.reference_path(). Deterministic in the config.
ReferenceTable compute_reference(const CampaignConfig& config, std::optional<std::size_t> workers = {});

struct RunPaths {
    std::filesystem::path trace;
    std::filesystem::path archive;
    std::filesystem::path meta;
};

RunPaths run_paths(const std::filesystem::path& out, const AlgorithmSpec& algorithm, std::string_view problem_id,
                   std::uint64_t seed);

/// Seed handed to the engine: shared by all algorithms for a (seed, problem) cell.
std::uint64_t run_seed(std::uint64_t seed, std::string_view problem_id);

struct RunOptions {
    bool force = false;
    std::optional<std::size_t> workers;
};

struct CampaignReport {
    std::size_t cells = 0;
    std::size_t executed = 0;
    std::size_t skipped = 0;
    std::uint64_t evaluations = 0; ///< performed by this invocation
    std::string manifest_hash;
};

CampaignReport run_campaign(const CampaignConfig& config, const RunOptions& options = {});

/// Hash of the run-affecting config fields and the reference table.
std::string manifest_hash(const CampaignConfig& config, const ReferenceTable& reference);

std::string trace_csv(const RunRecord& record, const std::string& manifest);
std::string archive_csv(const RunRecord& record, const std::string& manifest);

/// CliError MISSING_TRACE when the file does not exist.
std::vector<TraceSample> read_trace(const std::filesystem::path& path);

/// Runs fn(i) for i in [0, count) on up to `workers` threads. The first exception
/// is rethrown after all threads finish.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

} // namespace emoa
