// Command-line front end: run, reference, ecdf, diagnostics, scatter.
// Failures print one line "error <CODE>: <message>" to stderr and exit 2.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emoa/campaign.hpp"
#include "emoa/csv.hpp"
#include "emoa/report.hpp"

namespace {

using namespace emoa;

struct Common {
    std::string config;
    std::string out;
    bool force = false;
    std::size_t workers = 0;
    std::optional<std::uint64_t> seed_base;
};

CampaignConfig resolve(const Common& o) {
    if (o.config.empty()) {
        throw CliError("CONFIG", "--config is required");
    }
    CampaignConfig cfg = load_campaign_config(o.config);
    if (!o.out.empty()) {
        cfg.output = o.out;
    }
    if (o.workers) {
        cfg.workers = o.workers;
    }
    if (o.seed_base) {
        cfg.seed_base = *o.seed_base;
    }
    return cfg;
}

std::vector<CrossoverMethod> parse_operators(const std::string& text) {
    if (text == "all") {
        return {CrossoverMethod::SBX, CrossoverMethod::BLX, CrossoverMethod::PCX, CrossoverMethod::SPX,
                CrossoverMethod::REX};
    }
    std::vector<CrossoverMethod> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string::npos) {
            comma = text.size();
        }
        if (comma > start) {
            out.push_back(parse_crossover(text.substr(start, comma - start)));
        }
        start = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simple EMOA benchmark harness"};
    app.require_subcommand(1);

    Common run_opts;
    auto* run_cmd = app.add_subcommand("run", "execute a campaign grid");
    run_cmd->add_option("--config", run_opts.config, "campaign config file")->required();
    run_cmd->add_option("--out", run_opts.out, "output directory (overrides 'output')");
    run_cmd->add_flag("--force", run_opts.force, "rerun cells that already have complete outputs");
    run_cmd->add_option("--workers", run_opts.workers, "parallel runs");
    run_cmd->add_option("--seed-base", run_opts.seed_base, "first seed (overrides 'seed_base')");

    Common ref_opts;
    auto* ref_cmd = app.add_subcommand("reference", "compute per-problem reference values");
    ref_cmd->add_option("--config", ref_opts.config, "campaign config file")->required();
    ref_cmd->add_option("--out", ref_opts.out, "output directory (overrides 'output')");
    ref_cmd->add_option("--workers", ref_opts.workers, "parallel runs");

    std::string ecdf_dir;
    std::string grouping = "dimension";
    std::vector<std::string> ecdf_algs;
    auto* ecdf_cmd = app.add_subcommand("ecdf", "runtime ECDFs from a finished campaign");
    ecdf_cmd->add_option("--out", ecdf_dir, "campaign directory")->required();
    ecdf_cmd->add_option("--group", grouping, "dimension, pooled or problem:<id>");
    ecdf_cmd->add_option("--algorithms", ecdf_algs, "restrict to these algorithms")->delimiter(',');

    std::string diag_dir;
    auto* diag_cmd = app.add_subcommand("diagnostics", "trace checks and single-run diagnostics");
    diag_cmd->add_option("--out", diag_dir, "campaign directory")->required();

    std::string parents_file;
    std::string scatter_out = ".";
    std::string operators = "all";
    std::uint64_t scatter_seed = 1;
    std::size_t scatter_count = 1000;
    auto* scatter_cmd = app.add_subcommand("scatter", "children distribution of the crossover operators");
    scatter_cmd->add_option("--parents", parents_file, "CSV with one 2-D parent per row")->required();
    scatter_cmd->add_option("--out", scatter_out, "output directory");
    scatter_cmd->add_option("--operator", operators, "SBX, BLX, PCX, SPX, REX, a comma list, or all");
    scatter_cmd->add_option("--seed", scatter_seed, "random seed");
    scatter_cmd->add_option("--children", scatter_count, "children per operator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error USAGE: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*run_cmd) {
            auto cfg = resolve(run_opts);
            RunOptions opts;
            opts.force = run_opts.force;
            const auto report = run_campaign(cfg, opts);
            std::cout << "cells " << report.cells << " executed " << report.executed << " skipped " << report.skipped
                      << " evaluations " << report.evaluations << " manifest " << report.manifest_hash << "\n";
        } else if (*ref_cmd) {
            const auto cfg = resolve(ref_opts);
            const auto table = compute_reference(cfg);
            std::cout << "reference rows " << table.rows.size() << " written to " << cfg.reference_path().string()
                      << "\n";
        } else if (*ecdf_cmd) {
            for (const auto& f : write_ecdf_report(ecdf_dir, parse_grouping(grouping), ecdf_algs)) {
                std::cout << f.string() << "\n";
            }
        } else if (*diag_cmd) {
            const auto report = write_diagnostics(diag_dir);
            for (const auto& f : report.files) {
                std::cout << f.string() << "\n";
            }
            std::cout << "runs checked " << report.checks.size() << " failures " << report.failures() << "\n";
            if (report.failures()) {
                std::cerr << "error CHECK_FAILED: " << report.failures()
                          << " run(s) violate a trace invariant; see diagnostics_checks.csv\n";
                return 2;
            }
        } else if (*scatter_cmd) {
            for (const auto& f : write_scatter(parents_file, scatter_out, parse_operators(operators), scatter_seed,
                                               scatter_count)) {
                std::cout << f.string() << "\n";
            }
        }
    } catch (const CliError& e) {
        std::cerr << "error " << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error CONFIG: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error IO: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error INTERNAL: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
