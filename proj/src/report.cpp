#include "emoa/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "emoa/csv.hpp"
#include "emoa/svg.hpp"

namespace emoa {

namespace fs = std::filesystem;

namespace {

struct Campaign {
    CampaignConfig config;
    std::string hash;
    ProblemSuite suite;
    std::vector<const BiObjectiveProblem*> problems;
};

Campaign load_campaign(const fs::path& dir) {
    const fs::path cfg_path = dir / "campaign.cfg";
    if (!fs::exists(cfg_path)) {
        throw CliError("MISSING_CAMPAIGN", "no campaign.cfg in " + dir.string() + "; run the campaign first");
    }
    Campaign c;
    const std::string text = read_file(cfg_path);
    c.config = parse_campaign_config(text);
    c.config.output = dir;
    c.hash = manifest_of(text).value_or("");
    c.suite = c.config.suite();
    c.problems = c.config.selected(c.suite);
    return c;
}

IndicatorTrace to_indicator_trace(const std::vector<TraceSample>& samples, std::size_t n) {
    IndicatorTrace t;
    t.dimension = n;
    for (const auto& s : samples) {
        t.samples.emplace_back(s.evals, s.archive_indicator);
    }
    return t;
}

std::string group_label(const EcdfGrouping& g, std::size_t n) {
    switch (g.kind) {
    case EcdfGrouping::Kind::Dimension: return "n" + std::to_string(n);
    case EcdfGrouping::Kind::Pooled: return "pooled";
    case EcdfGrouping::Kind::Problem: return g.problem_id;
    }
    return "group";
}

} // namespace

EcdfGrouping parse_grouping(std::string_view text) {
    EcdfGrouping g;
    constexpr std::string_view tag = "problem:";
    if (text == "dimension") {
        g.kind = EcdfGrouping::Kind::Dimension;
    } else if (text == "pooled") {
        g.kind = EcdfGrouping::Kind::Pooled;
    } else if (text.substr(0, tag.size()) == tag && text.size() > tag.size()) {
        g.kind = EcdfGrouping::Kind::Problem;
        g.problem_id = std::string(text.substr(tag.size()));
    } else {
        throw CliError("CONFIG", "grouping '" + std::string(text) + "': expected dimension, pooled or problem:<id>");
    }
    return g;
}

double ecdf_at(const EcdfCurve& curve, double b) {
    const auto it = std::upper_bound(curve.abscissa.begin(), curve.abscissa.end(), b);
    if (it == curve.abscissa.begin()) {
        return 0.0;
    }
    return curve.ordinate[static_cast<std::size_t>(it - curve.abscissa.begin() - 1)];
}

std::vector<fs::path> write_ecdf_report(const fs::path& campaign_dir, const EcdfGrouping& grouping,
                                        const std::vector<std::string>& algorithm_filter) {
    const Campaign c = load_campaign(campaign_dir);
    std::vector<const AlgorithmSpec*> algs;
    for (const auto& a : c.config.algorithms) {
        if (algorithm_filter.empty() ||
            std::find(algorithm_filter.begin(), algorithm_filter.end(), a.name) != algorithm_filter.end()) {
            algs.push_back(&a);
        }
    }
    if (algs.empty()) {
        throw CliError("EMPTY_ALGORITHMS", "no algorithm selected for the ECDF");
    }

    // Problems per output group.
    std::map<std::string, std::vector<const BiObjectiveProblem*>> groups;
    for (const auto* p : c.problems) {
        if (grouping.kind == EcdfGrouping::Kind::Problem && p->id() != grouping.problem_id) {
            continue;
        }
        groups[group_label(grouping, p->dimension())].push_back(p);
    }
    if (groups.empty()) {
        throw CliError("CONFIG", "problem '" + grouping.problem_id + "' is not part of this campaign");
    }
    for (const auto& [label, problems] : groups) {
        for (const auto* p : problems) {
            if (p->dimension() != problems.front()->dimension()) {
                throw CliError("MIXED_DIMENSIONS", "ECDF group '" + label +
                                                       "' mixes dimensions; aggregate one n at a time");
            }
        }
    }

    const auto targets = icoco_targets();
    const auto seeds = c.config.seeds();
    const double max_per_n = static_cast<double>(c.config.budget_multiplier);
    std::vector<fs::path> written;
    for (const auto& [label, problems] : groups) {
        const std::size_t n = problems.front()->dimension();
        std::vector<EcdfCurve> curves;
        std::vector<double> grid;
        for (const auto* alg : algs) {
            std::vector<IndicatorTrace> traces;
            for (const auto* p : problems) {
                for (std::uint64_t seed : seeds) {
                    traces.push_back(to_indicator_trace(read_trace(run_paths(campaign_dir, *alg, p->id(), seed).trace), n));
                }
            }
            curves.push_back(ecdf(traces, targets, max_per_n));
            grid.insert(grid.end(), curves.back().abscissa.begin(), curves.back().abscissa.end());
        }
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

        std::vector<std::string> header{"fevals_per_n"};
        for (const auto* alg : algs) {
            header.push_back(alg->name);
        }
        CsvWriter csv(header, c.hash);
        for (double b : grid) {
            std::vector<std::string> row{format_double(b)};
            for (const auto& curve : curves) {
                row.push_back(format_double(ecdf_at(curve, b)));
            }
            csv.row(std::move(row));
        }

        PlotPanel panel;
        panel.title = label + ": " + std::to_string(problems.size()) + " problem(s), " +
                      std::to_string(seeds.size()) + " run(s) each, n = " + std::to_string(n);
        panel.x_label = "FEvals/n";
        panel.y_label = "fraction of (problem, run, target) triples";
        panel.log_x = true;
        for (std::size_t a = 0; a < algs.size(); ++a) {
            panel.series.push_back({algs[a]->name, curves[a].abscissa, curves[a].ordinate, SeriesStyle::Step, {}, 1.5});
        }
        PlotLayout layout;
        layout.panel_width = 720;
        layout.panel_height = 460;
        layout.caption = "Raw first-hit runtimes, no bootstrapping. 58 targets (approximate set). manifest " + c.hash;

        const fs::path base = campaign_dir / "reports" / ("ecdf_" + label);
        write_file(fs::path(base).concat(".csv"), csv.text());
        write_file(fs::path(base).concat(".svg"), render_svg({panel}, layout));
        written.push_back(fs::path(base).concat(".csv"));
        written.push_back(fs::path(base).concat(".svg"));
    }
    return written;
}

bool evals_strictly_increasing(const std::vector<TraceSample>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].evals <= trace[i - 1].evals) {
            return false;
        }
    }
    return true;
}

bool indicator_non_increasing(const std::vector<TraceSample>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].archive_indicator > trace[i - 1].archive_indicator) {
            return false;
        }
    }
    return true;
}

bool hypervolume_non_decreasing(const std::vector<TraceSample>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].archive_hv < trace[i - 1].archive_hv) {
            return false;
        }
    }
    return true;
}

bool replacements_linear(const std::vector<TraceSample>& trace, std::size_t k) {
    return std::all_of(trace.begin(), trace.end(),
                       [&](const TraceSample& s) { return s.cumulative_replacements == k * s.iteration; });
}

bool RunCheck::ok() const noexcept {
    return evals_increasing && indicator_monotone && hv_monotone && replacements_linear.value_or(true);
}

std::size_t DiagnosticsReport::failures() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const RunCheck& c) { return !c.ok(); }));
}

DiagnosticsReport write_diagnostics(const fs::path& campaign_dir) {
    const Campaign c = load_campaign(campaign_dir);
    const auto seeds = c.config.seeds();
    DiagnosticsReport report;
    CsvWriter checks({"algorithm", "problem_id", "seed", "evals_increasing", "indicator_non_increasing",
                      "hv_non_decreasing", "replacements_linear"},
                     c.hash);
    CsvWriter population({"algorithm", "problem_id", "seed", "evals", "population_indicator", "cumulative_replacements"},
                         c.hash);
    auto yes_no = [](bool b) { return std::string(b ? "yes" : "no"); };

    for (const auto* p : c.problems) {
        PlotPanel pop_panel;
        pop_panel.title = p->id() + ": population indicator (single run)";
        pop_panel.x_label = "evaluations";
        pop_panel.y_label = "indicator of the population";
        pop_panel.log_x = true;
        PlotPanel rep_panel;
        rep_panel.title = p->id() + ": cumulative parents replaced (single run)";
        rep_panel.x_label = "evaluations";
        rep_panel.y_label = "replaced parents";
        rep_panel.log_x = true;

        for (const auto& alg : c.config.algorithms) {
            const std::size_t k = alg.make_config(p->dimension()).crossover.k;
            for (std::size_t si = 0; si < seeds.size(); ++si) {
                const fs::path path = run_paths(campaign_dir, alg, p->id(), seeds[si]).trace;
                const auto trace = read_trace(path);
                RunCheck check{alg.name, p->id(), seeds[si], evals_strictly_increasing(trace),
                               indicator_non_increasing(trace), hypervolume_non_decreasing(trace), std::nullopt};
                if (alg.loop == LoopKind::Simple && alg.selection == SelectionScheme::BC) {
                    check.replacements_linear = replacements_linear(trace, k);
                }
                checks.row({check.algorithm, check.problem_id, format_uint(check.seed), yes_no(check.evals_increasing),
                            yes_no(check.indicator_monotone), yes_no(check.hv_monotone),
                            check.replacements_linear ? yes_no(*check.replacements_linear) : std::string("n/a")});
                report.checks.push_back(std::move(check));

                PlotSeries pop{alg.name, {}, {}, SeriesStyle::Line, {}, 1.5};
                PlotSeries rep{alg.name, {}, {}, SeriesStyle::Line, {}, 1.5};
                for (const auto& s : trace) {
                    if (!s.population_indicator) {
                        throw CliError("MISSING_TRACE", "population indicator not recorded in " + path.string() +
                                                            "; rerun with record_population_indicator = true");
                    }
                    population.row({alg.name, p->id(), format_uint(seeds[si]), format_uint(s.evals),
                                    format_double(*s.population_indicator), format_uint(s.cumulative_replacements)});
                    if (si == 0) {
                        pop.x.push_back(static_cast<double>(s.evals));
                        pop.y.push_back(*s.population_indicator);
                        rep.x.push_back(static_cast<double>(s.evals));
                        rep.y.push_back(static_cast<double>(s.cumulative_replacements));
                    }
                }
                if (si == 0) {
                    pop_panel.series.push_back(std::move(pop));
                    rep_panel.series.push_back(std::move(rep));
                }
            }
        }
        PlotLayout layout;
        layout.columns = 2;
        layout.caption = "seed " + format_uint(seeds.front()) + ", manifest " + c.hash;
        const fs::path svg = campaign_dir / "reports" / ("diagnostics_" + p->id() + ".svg");
        write_file(svg, render_svg({pop_panel, rep_panel}, layout));
        report.files.push_back(svg);
    }
    const fs::path checks_path = campaign_dir / "reports" / "diagnostics_checks.csv";
    const fs::path population_path = campaign_dir / "reports" / "diagnostics_population.csv";
    write_file(checks_path, checks.text());
    write_file(population_path, population.text());
    report.files.push_back(checks_path);
    report.files.push_back(population_path);
    return report;
}

std::vector<DecisionVector> scatter_children(CrossoverMethod method, const std::vector<DecisionVector>& parents,
                                             std::size_t count, std::uint64_t seed) {
    if (parents.empty()) {
        throw CliError("DIMENSION", "scatter: no parents given");
    }
    const std::size_t n = parents.front().size();
    const CrossoverConfig cfg = CrossoverConfig::for_method(method, n);
    if (parents.size() < cfg.k) {
        throw CliError("DIMENSION", "scatter: " + std::string(to_string(method)) + " needs " + std::to_string(cfg.k) +
                                        " parents");
    }
    const std::vector<DecisionVector> used(parents.begin(), parents.begin() + static_cast<std::ptrdiff_t>(cfg.k));
    const Bounds bounds = Bounds::unbounded(n);
    RandomSource rng(seed);
    std::vector<DecisionVector> children;
    children.reserve(count);
    while (children.size() < count) {
        switch (method) {
        case CrossoverMethod::SBX: {
            auto [a, b] = sbx_pair(used[0], used[1], cfg, bounds, rng);
            children.push_back(std::move(a));
            if (children.size() < count) {
                children.push_back(std::move(b));
            }
            break;
        }
        case CrossoverMethod::BLX: children.push_back(blx_alpha(used[0], used[1], cfg, bounds, rng)); break;
        case CrossoverMethod::PCX: children.push_back(pcx(used, children.size() % cfg.k, cfg, bounds, rng)); break;
        case CrossoverMethod::SPX: children.push_back(spx(used, cfg, bounds, rng)); break;
        case CrossoverMethod::REX: children.push_back(rex(used, cfg, bounds, rng)); break;
        }
    }
    return children;
}

std::vector<fs::path> write_scatter(const fs::path& parents_csv, const fs::path& out_dir,
                                    const std::vector<CrossoverMethod>& methods, std::uint64_t seed,
                                    std::size_t count) {
    std::string text;
    try {
        text = read_file(parents_csv);
    } catch (const IoError& e) {
        throw CliError("IO", e.what());
    }
    const CsvTable table = parse_csv(text);
    if (table.header.size() != 2) {
        throw CliError("DIMENSION", "scatter needs 2-D parents, got " + std::to_string(table.header.size()) +
                                        " column(s)");
    }
    std::vector<DecisionVector> parents;
    for (const auto& row : table.rows) {
        parents.push_back({parse_double(row[0]), parse_double(row[1])});
    }
    if (methods.empty()) {
        throw CliError("CONFIG", "scatter: no operator selected");
    }

    CsvWriter csv({"operator", "x1", "x2"});
    std::vector<PlotPanel> panels;
    for (CrossoverMethod m : methods) {
        const auto children = scatter_children(m, parents, count, seed);
        const std::size_t k = CrossoverConfig::for_method(m, 2).k;
        PlotPanel panel;
        panel.title = std::string(to_string(m));
        panel.x_label = "x1";
        panel.y_label = "x2";
        panel.equal_aspect = true;
        PlotSeries kids{"children", {}, {}, SeriesStyle::Points, "#1f77b4", 1.2};
        for (const auto& c : children) {
            kids.x.push_back(c[0]);
            kids.y.push_back(c[1]);
            csv.row({std::string(to_string(m)), format_double(c[0]), format_double(c[1])});
        }
        PlotSeries par{"parents", {}, {}, SeriesStyle::Points, "#d62728", 4.0};
        for (std::size_t i = 0; i < k; ++i) {
            par.x.push_back(parents[i][0]);
            par.y.push_back(parents[i][1]);
        }
        panel.series.push_back(std::move(kids));
        panel.series.push_back(std::move(par));
        if (m == CrossoverMethod::SPX) {
            const double eps = CrossoverConfig::for_method(m, 2).epsilon;
            double gx = 0.0;
            double gy = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                gx += parents[i][0] / static_cast<double>(k);
                gy += parents[i][1] / static_cast<double>(k);
            }
            PlotPolygon tri;
            for (std::size_t i = 0; i < k; ++i) {
                tri.vertices.emplace_back(gx + eps * (parents[i][0] - gx), gy + eps * (parents[i][1] - gy));
            }
            panel.polygons.push_back(std::move(tri));
        }
        panels.push_back(std::move(panel));
    }
    PlotLayout layout;
    layout.columns = static_cast<int>(std::min<std::size_t>(methods.size(), 3));
    layout.panel_width = 380;
    layout.panel_height = 380;
    layout.caption = std::to_string(count) + " children per operator, seed " + format_uint(seed);
    const fs::path svg = out_dir / "scatter.svg";
    const fs::path data = out_dir / "scatter.csv";
    write_file(svg, render_svg(panels, layout));
    write_file(data, csv.text());
    return {svg, data};
}

} // namespace emoa
