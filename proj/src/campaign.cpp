#include "emoa/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "emoa/csv.hpp"

namespace emoa {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= value.size()) {
        auto comma = value.find(',', start);
        if (comma == std::string_view::npos) {
            comma = value.size();
        }
        const auto item = trim(value.substr(start, comma - start));
        if (!item.empty()) {
            items.emplace_back(item);
        }
        start = comma + 1;
    }
    return items;
}

template <class T>
std::string join(const std::vector<T>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) {
            out += ",";
        }
        if constexpr (std::is_same_v<T, std::string>) {
            out += items[i];
        } else {
            out += format_uint(items[i]);
        }
    }
    return out;
}

std::string join_names(const std::vector<AlgorithmSpec>& algs) {
    std::vector<std::string> names;
    for (const auto& a : algs) {
        names.push_back(a.name);
    }
    return join(names);
}

void append_unique(std::vector<AlgorithmSpec>& into, const std::vector<AlgorithmSpec>& more) {
    for (const auto& a : more) {
        const bool seen = std::any_of(into.begin(), into.end(), [&](const AlgorithmSpec& b) { return b.name == a.name; });
        if (!seen) {
            into.push_back(a);
        }
    }
}

CliError config_error(std::string_view key, const std::string& what) {
    return CliError("CONFIG", "key '" + std::string(key) + "': " + what);
}

std::uint64_t key_uint(std::string_view key, std::string_view value) {
    try {
        return parse_uint(value);
    } catch (const ConfigError&) {
        throw config_error(key, "expected a non-negative integer, got '" + std::string(value) + "'");
    }
}

bool key_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "yes" || value == "1") {
        return true;
    }
    if (value == "false" || value == "no" || value == "0") {
        return false;
    }
    throw config_error(key, "expected true or false, got '" + std::string(value) + "'");
}

std::vector<AlgorithmSpec> key_algorithms(std::string_view key, std::string_view value) {
    std::vector<AlgorithmSpec> algs;
    for (const auto& item : split_list(value)) {
        try {
            append_unique(algs, {parse_algorithm(item)});
        } catch (const ConfigError& e) {
            throw config_error(key, e.what());
        }
    }
    return algs;
}

std::string meta_value(const CsvTable& meta, std::string_view key) {
    const auto k = meta.column("key");
    const auto v = meta.column("value");
    for (const auto& row : meta.rows) {
        if (row[k] == key) {
            return row[v];
        }
    }
    return {};
}

} // namespace

CliError::CliError(std::string code, const std::string& message)
    : std::runtime_error(message), code_(std::move(code)) {}

RunConfig AlgorithmSpec::make_config(std::size_t n) const {
    RunConfig cfg = loop == LoopKind::Generational ? RunConfig::generational(n, ranking)
                                                   : RunConfig::standard(n, selection, crossover, ranking);
    if (lambda_per_n) {
        cfg.lambda = lambda_per_n * n;
    }
    return cfg;
}

std::string AlgorithmSpec::directory_name() const {
    std::string dir;
    for (char c : name) {
        dir += c == '@' ? '_' : (c == '=' ? '-' : c);
    }
    return dir;
}

AlgorithmSpec parse_algorithm(std::string_view text) {
    text = trim(text);
    AlgorithmSpec spec;
    std::string_view base = text;
    if (const auto at = text.find('@'); at != std::string_view::npos) {
        base = text.substr(0, at);
        const auto suffix = text.substr(at + 1);
        constexpr std::string_view tag = "lambda=";
        if (suffix.substr(0, tag.size()) != tag || suffix.size() < tag.size() + 2 || suffix.back() != 'n') {
            throw ConfigError("algorithm '" + std::string(text) + "': expected a suffix like @lambda=3n");
        }
        const auto count = suffix.substr(tag.size(), suffix.size() - tag.size() - 1);
        spec.lambda_per_n = parse_uint(count);
        if (spec.lambda_per_n == 0) {
            throw ConfigError("algorithm '" + std::string(text) + "': lambda must be positive");
        }
    }
    static const std::map<std::string_view, RankingMethod> originals{
        {"NSGA-II", RankingMethod::NS}, {"SMS-EMOA", RankingMethod::SM},
        {"SPEA2", RankingMethod::SP},   {"IBEA", RankingMethod::IB}};
    if (const auto it = originals.find(base); it != originals.end()) {
        spec.loop = LoopKind::Generational;
        spec.selection = SelectionScheme::BA;
        spec.crossover = CrossoverMethod::SBX;
        spec.ranking = it->second;
    } else {
        const auto d1 = base.find('-');
        const auto d2 = d1 == std::string_view::npos ? d1 : base.find('-', d1 + 1);
        if (d2 == std::string_view::npos || base.find('-', d2 + 1) != std::string_view::npos) {
            throw ConfigError("unknown algorithm '" + std::string(text) +
                              "' (expected X-Y-Z, NSGA-II, SPEA2, SMS-EMOA or IBEA)");
        }
        spec.selection = parse_selection(base.substr(0, d1));
        spec.crossover = parse_crossover(base.substr(d1 + 1, d2 - d1 - 1));
        spec.ranking = parse_ranking(base.substr(d2 + 1));
    }
    spec.name = std::string(base);
    if (spec.lambda_per_n) {
        spec.name += "@lambda=" + format_uint(spec.lambda_per_n) + "n";
    }
    return spec;
}

std::vector<std::string_view> preset_names() {
    return {"core", "originals", "lambda-sweep", "crossovers", "rankings"};
}

std::vector<AlgorithmSpec> algorithm_preset(std::string_view name) {
    std::vector<std::string> names;
    if (name == "core") {
        names = {"NSGA-II", "BA-SPX-NS", "BF-SPX-NS", "BC-SPX-NS"};
    } else if (name == "originals") {
        names = {"NSGA-II", "SPEA2", "SMS-EMOA", "IBEA"};
    } else if (name == "lambda-sweep") {
        for (int c : {1, 3, 5, 8, 10}) {
            names.push_back("BA-SPX-NS@lambda=" + std::to_string(c) + "n");
        }
    } else if (name == "crossovers") {
        for (const char* sel : {"BF", "BC"}) {
            for (const char* cx : {"SBX", "BLX", "PCX", "SPX", "REX"}) {
                names.push_back(std::string(sel) + "-" + cx + "-NS");
            }
        }
    } else if (name == "rankings") {
        for (const char* sel : {"BA", "BC"}) {
            for (const char* r : {"NS", "SM", "SP", "IB"}) {
                names.push_back(std::string(sel) + "-SPX-" + r);
            }
        }
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "'");
    }
    std::vector<AlgorithmSpec> algs;
    for (const auto& n : names) {
        algs.push_back(parse_algorithm(n));
    }
    return algs;
}

std::vector<std::uint64_t> CampaignConfig::seeds() const {
    if (!explicit_seeds.empty()) {
        return explicit_seeds;
    }
    std::vector<std::uint64_t> s(seed_count);
    for (std::size_t i = 0; i < seed_count; ++i) {
        s[i] = seed_base + i;
    }
    return s;
}

fs::path CampaignConfig::reference_path() const {
    return reference.empty() ? output / "reference.csv" : reference;
}

const std::vector<AlgorithmSpec>& CampaignConfig::effective_reference_algorithms() const {
    return reference_algorithms.empty() ? algorithms : reference_algorithms;
}

void CampaignConfig::validate() const {
    if (algorithms.empty()) {
        throw CliError("EMPTY_ALGORITHMS", "no algorithms configured (set 'algorithms' or 'preset')");
    }
    if (dims.empty()) {
        throw config_error("dims", "at least one dimension is required");
    }
    for (std::size_t n : dims) {
        if (n < 2) {
            throw config_error("dims", "dimensions must be at least 2");
        }
    }
    const auto s = seeds();
    if (s.empty()) {
        throw config_error("seeds", "at least one seed is required");
    }
    if (std::set<std::uint64_t>(s.begin(), s.end()).size() != s.size()) {
        throw config_error("seed_list", "seeds must be distinct");
    }
    if (budget_multiplier == 0) {
        throw config_error("budget_multiplier", "must be positive");
    }
    if (reference_budget_multiplier == 0 || reference_seed_count == 0) {
        throw config_error("reference_budget_multiplier", "reference budget and seeds must be positive");
    }
    if (workers == 0) {
        throw config_error("workers", "must be positive");
    }
    for (std::size_t n : dims) {
        for (const auto& a : algorithms) {
            auto cfg = a.make_config(n);
            cfg.max_evals = budget_multiplier * n;
            cfg.record_interval = record_interval;
            try {
                cfg.validate();
                if (cfg.crossover.k > n + 1) {
                    throw ConfigError("k exceeds n + 1");
                }
            } catch (const ConfigError& e) {
                throw config_error("algorithms", a.name + " at n = " + std::to_string(n) + ": " + e.what());
            }
        }
    }
    const auto all = suite();
    (void)selected(all);
}

ProblemSuite CampaignConfig::suite() const {
    return make_suite(dims, suite_seed);
}

std::vector<const BiObjectiveProblem*> CampaignConfig::selected(const ProblemSuite& suite) const {
    std::vector<const BiObjectiveProblem*> out;
    for (const auto& p : suite.problems) {
        const bool wanted = problems.empty() || std::any_of(problems.begin(), problems.end(), [&](const std::string& s) {
                                return s == p.pair().key || s == p.id();
                            });
        if (wanted) {
            out.push_back(&p);
        }
    }
    for (const auto& s : problems) {
        const bool known = std::any_of(suite.problems.begin(), suite.problems.end(), [&](const BiObjectiveProblem& p) {
            return s == p.pair().key || s == p.id();
        });
        if (!known) {
            throw config_error("problems", "unknown problem '" + s + "' for the configured dims");
        }
    }
    return out;
}

std::string CampaignConfig::to_text() const {
    std::string t;
    auto line = [&](std::string_view k, const std::string& v) { t += std::string(k) + " = " + v + "\n"; };
    line("dims", join(dims));
    line("problems", problems.empty() ? "all" : join(problems));
    line("algorithms", join_names(algorithms));
    if (explicit_seeds.empty()) {
        line("seeds", format_uint(seed_count));
        line("seed_base", format_uint(seed_base));
    } else {
        line("seed_list", join(explicit_seeds));
    }
    line("budget_multiplier", format_uint(budget_multiplier));
    line("suite_seed", format_uint(suite_seed));
    line("output", output.string());
    if (!reference.empty()) {
        line("reference", reference.string());
    }
    line("record_population_indicator", record_population_indicator ? "true" : "false");
    line("record_interval", format_uint(record_interval));
    line("workers", format_uint(workers));
    line("reference_budget_multiplier", format_uint(reference_budget_multiplier));
    line("reference_seeds", format_uint(reference_seed_count));
    line("reference_seed_base", format_uint(reference_seed_base));
    if (!reference_algorithms.empty()) {
        line("reference_algorithms", join_names(reference_algorithms));
    }
    return t;
}

CampaignConfig parse_campaign_config(std::string_view text) {
    CampaignConfig cfg;
    std::set<std::string> seen;
    std::vector<AlgorithmSpec> from_presets;
    std::vector<AlgorithmSpec> listed;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw CliError("CONFIG", "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw config_error(key, "given more than once");
        }
        if (key == "dims") {
            cfg.dims.clear();
            for (const auto& d : split_list(value)) {
                cfg.dims.push_back(key_uint(key, d));
            }
        } else if (key == "problems") {
            cfg.problems.clear();
            if (value != "all") {
                cfg.problems = split_list(value);
            }
        } else if (key == "algorithms") {
            listed = key_algorithms(key, value);
        } else if (key == "preset") {
            for (const auto& p : split_list(value)) {
                try {
                    append_unique(from_presets, algorithm_preset(p));
                } catch (const ConfigError& e) {
                    throw config_error(key, e.what());
                }
            }
        } else if (key == "seeds") {
            cfg.seed_count = key_uint(key, value);
        } else if (key == "seed_base") {
            cfg.seed_base = key_uint(key, value);
        } else if (key == "seed_list") {
            for (const auto& s : split_list(value)) {
                cfg.explicit_seeds.push_back(key_uint(key, s));
            }
        } else if (key == "budget_multiplier") {
            cfg.budget_multiplier = key_uint(key, value);
        } else if (key == "suite_seed") {
            cfg.suite_seed = key_uint(key, value);
        } else if (key == "output") {
            cfg.output = std::string(value);
        } else if (key == "reference") {
            cfg.reference = std::string(value);
        } else if (key == "record_population_indicator") {
            cfg.record_population_indicator = key_bool(key, value);
        } else if (key == "record_interval") {
            cfg.record_interval = key_uint(key, value);
        } else if (key == "workers") {
            cfg.workers = key_uint(key, value);
        } else if (key == "reference_budget_multiplier") {
            cfg.reference_budget_multiplier = key_uint(key, value);
        } else if (key == "reference_seeds") {
            cfg.reference_seed_count = key_uint(key, value);
        } else if (key == "reference_seed_base") {
            cfg.reference_seed_base = key_uint(key, value);
        } else if (key == "reference_algorithms") {
            cfg.reference_algorithms = key_algorithms(key, value);
        } else {
            throw config_error(key, "unknown key");
        }
    }
    cfg.algorithms = from_presets;
    append_unique(cfg.algorithms, listed);
    return cfg;
}

CampaignConfig load_campaign_config(const fs::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const IoError& e) {
        throw CliError("IO", e.what());
    }
    return parse_campaign_config(text);
}

const ReferenceRow* ReferenceTable::find(std::string_view problem_id) const noexcept {
    for (const auto& r : rows) {
        if (r.problem_id == problem_id) {
            return &r;
        }
    }
    return nullptr;
}

ReferenceTable read_reference(const fs::path& path) {
    if (!fs::exists(path)) {
        throw CliError("MISSING_REFERENCE",
                       "reference file " + path.string() + " not found; run the 'reference' command first");
    }
    const std::string text = read_file(path);
    const CsvTable table = parse_csv(text);
    ReferenceTable ref;
    ref.content_hash = fnv1a64(text);
    const auto c_id = table.column("problem_id");
    const auto c_n = table.column("n");
    const auto c_i1 = table.column("ideal1");
    const auto c_i2 = table.column("ideal2");
    const auto c_n1 = table.column("nadir1");
    const auto c_n2 = table.column("nadir2");
    const auto c_hv = table.column("reference_hv");
    const auto c_seed = table.column("campaign_seed");
    for (const auto& row : table.rows) {
        ReferenceRow r;
        r.problem_id = row[c_id];
        r.n = parse_uint(row[c_n]);
        r.ideal = {parse_double(row[c_i1]), parse_double(row[c_i2])};
        r.nadir = {parse_double(row[c_n1]), parse_double(row[c_n2])};
        r.reference_hv = parse_double(row[c_hv]);
        r.campaign_seed = parse_uint(row[c_seed]);
        ref.rows.push_back(std::move(r));
    }
    return ref;
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::uint64_t run_seed(std::uint64_t seed, std::string_view problem_id) {
    return derive_seed(seed, {fnv1a64(problem_id)});
}

ReferenceTable compute_reference(const CampaignConfig& config, std::optional<std::size_t> workers) {
    config.validate();
    const auto suite = config.suite();
    const auto problems = config.selected(suite);
    const auto& algs = config.effective_reference_algorithms();
    const std::size_t per_problem = algs.size() * config.reference_seed_count;
    std::vector<std::vector<ArchiveEntry>> archives(problems.size() * per_problem);

    parallel_for(archives.size(), workers.value_or(config.workers), [&](std::size_t task) {
        const auto& problem = *problems[task / per_problem];
        const auto& alg = algs[(task % per_problem) / config.reference_seed_count];
        const std::uint64_t seed = config.reference_seed_base + task % config.reference_seed_count;
        RunConfig cfg = alg.make_config(problem.dimension());
        cfg.max_evals = config.reference_budget_multiplier * problem.dimension();
        cfg.seed = run_seed(seed, problem.id());
        cfg.problem_id = problem.id();
        cfg.record_interval = static_cast<std::size_t>(cfg.max_evals);
        archives[task] = run(cfg, problem, IndicatorContext{problem.ideal(), problem.nadir(), 1.0}).final_archive;
    });

    ReferenceTable table;
    CsvWriter csv({"problem_id", "n", "ideal1", "ideal2", "nadir1", "nadir2", "reference_hv", "campaign_seed"},
                  hex64(fnv1a64("dims=" + join(config.dims) + ";problems=" + join(config.problems) +
                                ";suite_seed=" + format_uint(config.suite_seed) +
                                ";algorithms=" + join_names(algs) +
                                ";budget=" + format_uint(config.reference_budget_multiplier) +
                                ";seeds=" + format_uint(config.reference_seed_count) +
                                ";seed_base=" + format_uint(config.reference_seed_base))));
    for (std::size_t p = 0; p < problems.size(); ++p) {
        const auto& problem = *problems[p];
        Archive merged;
        for (std::size_t t = 0; t < per_problem; ++t) {
            for (const auto& e : archives[p * per_problem + t]) {
                merged.insert(e.f, e.eval_id);
            }
        }
        const IndicatorContext ctx{problem.ideal(), problem.nadir(), 1.0};
        std::vector<ObjectiveVector> normalized;
        for (const auto& f : merged.points()) {
            normalized.push_back(ctx.normalize(f));
        }
        const double hv = hypervolume_2d(normalized, {1.0, 1.0});
        if (!(hv > 0.0)) {
            throw CliError("REFERENCE_EMPTY", "no reference solution of " + problem.id() +
                                                  " reaches the region of interest; raise reference_budget_multiplier");
        }
        ReferenceRow row{problem.id(), problem.dimension(), problem.ideal(), problem.nadir(), std::min(hv, 1.0),
                         config.reference_seed_base};
        csv.row({row.problem_id, format_uint(row.n), format_double(row.ideal[0]), format_double(row.ideal[1]),
                 format_double(row.nadir[0]), format_double(row.nadir[1]), format_double(row.reference_hv),
                 format_uint(row.campaign_seed)});
        table.rows.push_back(std::move(row));
    }
    write_file(config.reference_path(), csv.text());
    table.content_hash = fnv1a64(csv.text());
    return table;
}

RunPaths run_paths(const fs::path& out, const AlgorithmSpec& algorithm, std::string_view problem_id,
                   std::uint64_t seed) {
    const fs::path dir = out / "runs" / algorithm.directory_name() / std::string(problem_id);
    const std::string stem = "s" + format_uint(seed);
    return {dir / (stem + "_trace.csv"), dir / (stem + "_archive.csv"), dir / (stem + "_meta.csv")};
}

std::string manifest_hash(const CampaignConfig& config, const ReferenceTable& reference) {
    std::string canon = "dims=" + join(config.dims) + ";problems=" + join(config.problems) +
                        ";algorithms=" + join_names(config.algorithms) + ";seeds=" + join(config.seeds()) +
                        ";budget=" + format_uint(config.budget_multiplier) +
                        ";suite_seed=" + format_uint(config.suite_seed) +
                        ";population=" + (config.record_population_indicator ? "1" : "0") +
                        ";interval=" + format_uint(config.record_interval) +
                        ";reference=" + hex64(reference.content_hash);
    return hex64(fnv1a64(canon));
}

std::string trace_csv(const RunRecord& record, const std::string& manifest) {
    CsvWriter csv({"evals", "iteration", "archive_indicator", "archive_hv", "archive_size", "population_indicator",
                   "cumulative_replacements"},
                  manifest);
    for (const auto& s : record.trace) {
        csv.row({format_uint(s.evals), format_uint(s.iteration), format_double(s.archive_indicator),
                 format_double(s.archive_hv), format_uint(s.archive_size),
                 s.population_indicator ? format_double(*s.population_indicator) : std::string(),
                 format_uint(s.cumulative_replacements)});
    }
    return csv.text();
}

std::string archive_csv(const RunRecord& record, const std::string& manifest) {
    CsvWriter csv({"eval_id", "f1", "f2"}, manifest);
    for (const auto& e : record.final_archive) {
        csv.row({format_uint(e.eval_id), format_double(e.f[0]), format_double(e.f[1])});
    }
    return csv.text();
}

std::vector<TraceSample> read_trace(const fs::path& path) {
    if (!fs::exists(path)) {
        throw CliError("MISSING_TRACE", "trace file " + path.string() + " not found");
    }
    const CsvTable table = parse_csv(read_file(path));
    const auto c_e = table.column("evals");
    const auto c_it = table.column("iteration");
    const auto c_ai = table.column("archive_indicator");
    const auto c_hv = table.column("archive_hv");
    const auto c_sz = table.column("archive_size");
    const auto c_pop = table.column("population_indicator");
    const auto c_rep = table.column("cumulative_replacements");
    std::vector<TraceSample> samples;
    samples.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        TraceSample s;
        s.evals = parse_uint(row[c_e]);
        s.iteration = parse_uint(row[c_it]);
        s.archive_indicator = parse_double(row[c_ai]);
        s.archive_hv = parse_double(row[c_hv]);
        s.archive_size = parse_uint(row[c_sz]);
        if (!row[c_pop].empty()) {
            s.population_indicator = parse_double(row[c_pop]);
        }
        s.cumulative_replacements = parse_uint(row[c_rep]);
        samples.push_back(s);
    }
    return samples;
}

namespace {

std::string meta_csv(const AlgorithmSpec& alg, const RunRecord& record, std::uint64_t seed, const std::string& hash) {
    const auto& c = record.config;
    CsvWriter csv({"key", "value"}, hash);
    csv.row({"algorithm", alg.name})
        .row({"problem_id", c.problem_id})
        .row({"n", format_uint(record.dimension)})
        .row({"seed", format_uint(seed)})
        .row({"run_seed", format_uint(c.seed)})
        .row({"loop", std::string(to_string(c.loop))})
        .row({"selection", std::string(to_string(c.selection))})
        .row({"crossover", std::string(to_string(c.crossover.method))})
        .row({"ranking", std::string(to_string(c.ranking))})
        .row({"k", format_uint(c.crossover.k)})
        .row({"mu", format_uint(c.mu)})
        .row({"lambda", format_uint(c.lambda)})
        .row({"max_evals", format_uint(c.max_evals)})
        .row({"evaluations", format_uint(record.evaluations)})
        .row({"iterations", format_uint(record.iterations)})
        .row({"rng", std::string(RandomSource::algorithm())})
        .row({"budget_rule", "an iteration runs only if all of its lambda evaluations fit into max_evals"})
        .row({"wall_seconds", format_double(record.wall_seconds)});
    if (c.loop == LoopKind::Generational) {
        csv.row({"preset_note", "framework stand-in: binary-tournament mating with SBX/PM and best-of-all "
                                "selection over mu + lambda; not the original implementation"});
    }
    return csv.text();
}

bool cell_complete(const RunPaths& paths, const std::string& hash) {
    if (!fs::exists(paths.meta) || !fs::exists(paths.trace) || !fs::exists(paths.archive)) {
        return false;
    }
    try {
        return parse_csv(read_file(paths.meta)).manifest_hash == hash;
    } catch (const std::exception&) {
        return false;
    }
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

} // namespace

CampaignReport run_campaign(const CampaignConfig& config, const RunOptions& options) {
    config.validate();
    const ReferenceTable reference = read_reference(config.reference_path());
    const auto suite = config.suite();
    const auto problems = config.selected(suite);
    std::vector<IndicatorContext> contexts;
    for (const auto* p : problems) {
        const auto* row = reference.find(p->id());
        if (!row) {
            throw CliError("MISSING_REFERENCE", "no reference value for " + p->id() + " in " +
                                                    config.reference_path().string() +
                                                    "; run the 'reference' command first");
        }
        if (row->ideal != p->ideal() || row->nadir != p->nadir()) {
            throw CliError("STALE_REFERENCE", "reference row for " + p->id() +
                                                  " does not match the suite (different suite_seed?)");
        }
        contexts.push_back({row->ideal, row->nadir, row->reference_hv});
    }

    const std::string hash = manifest_hash(config, reference);
    write_file(config.output / "campaign.cfg", "# manifest " + hash + "\n" + config.to_text());

    const auto seeds = config.seeds();
    const std::size_t per_alg = problems.size() * seeds.size();
    CampaignReport report;
    report.cells = config.algorithms.size() * per_alg;
    report.manifest_hash = hash;
    std::atomic<std::size_t> executed{0};
    std::atomic<std::uint64_t> evaluations{0};

    parallel_for(report.cells, options.workers.value_or(config.workers), [&](std::size_t cell) {
        const auto& alg = config.algorithms[cell / per_alg];
        const std::size_t p = (cell % per_alg) / seeds.size();
        const std::uint64_t seed = seeds[cell % seeds.size()];
        const auto& problem = *problems[p];
        const RunPaths paths = run_paths(config.output, alg, problem.id(), seed);
        if (!options.force && cell_complete(paths, hash)) {
            return;
        }
        fs::remove(paths.meta);
        RunConfig cfg = alg.make_config(problem.dimension());
        cfg.max_evals = config.budget_multiplier * problem.dimension();
        cfg.seed = run_seed(seed, problem.id());
        cfg.problem_id = problem.id();
        cfg.record_population_indicator = config.record_population_indicator;
        cfg.record_interval = config.record_interval;
        const RunRecord record = run(cfg, problem, contexts[p]);
        write_file(paths.trace, trace_csv(record, hash));
        write_file(paths.archive, archive_csv(record, hash));
        write_file(paths.meta, meta_csv(alg, record, seed, hash));
        ++executed;
        evaluations += record.evaluations;
    });
    report.executed = executed;
    report.skipped = report.cells - report.executed;
    report.evaluations = evaluations;

    CsvWriter manifest({"algorithm", "problem_id", "n", "seed", "evaluations", "final_indicator", "trace_file"}, hash);
    CsvWriter summary({"algorithm", "problem_id", "n", "runs", "median_final_indicator", "best_final_indicator",
                       "worst_final_indicator"},
                      hash);
    for (const auto& alg : config.algorithms) {
        for (const auto* problem : problems) {
            std::vector<double> finals;
            for (std::uint64_t seed : seeds) {
                const RunPaths paths = run_paths(config.output, alg, problem->id(), seed);
                const auto trace = read_trace(paths.trace);
                const auto meta = parse_csv(read_file(paths.meta));
                const double final_value = trace.back().archive_indicator;
                finals.push_back(final_value);
                manifest.row({alg.name, problem->id(), format_uint(problem->dimension()), format_uint(seed),
                              meta_value(meta, "evaluations"), format_double(final_value),
                              fs::relative(paths.trace, config.output).generic_string()});
            }
            summary.row({alg.name, problem->id(), format_uint(problem->dimension()), format_uint(finals.size()),
                         format_double(median(finals)), format_double(*std::min_element(finals.begin(), finals.end())),
                         format_double(*std::max_element(finals.begin(), finals.end()))});
        }
    }
    write_file(config.output / "manifest.csv", manifest.text());
    write_file(config.output / "summary.csv", summary.text());
    return report;
}

} // namespace emoa
