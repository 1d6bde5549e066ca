#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "semgp/harness.hpp"

namespace {

using namespace semgp;

auto read_config(std::string const& path) -> ExperimentConfig
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (nlohmann::json::exception const& e) {
        throw Error("config is not valid JSON: " + std::string(e.what()));
    }
    return j.get<ExperimentConfig>();
}

void print_summary(Summary const& s)
{
    std::cout << std::left << std::setw(44) << "config" << std::right << std::setw(6) << "runs" << std::setw(14)
              << "hv_median" << std::setw(14) << "uniq_median" << std::setw(14) << "nodes_median" << '\n';
    for (auto const& g : s.groups) {
        std::cout << std::left << std::setw(44) << g.label << std::right << std::setw(6) << g.runs << std::fixed
                  << std::setprecision(4) << std::setw(14) << g.hypervolume.median << std::setw(14)
                  << g.unique_count.median << std::setw(14) << g.mean_nodes.median << '\n';
    }
    if (!s.unique_ratios.empty()) {
        std::cout << "\nmedian unique-solution ratios\n";
        for (auto const& r : s.unique_ratios) {
            std::cout << "  " << r.numerator << " / " << r.denominator << " = " << std::setprecision(3) << r.ratio
                      << '\n';
        }
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app { "Semantic multi-objective genetic programming experiments" };
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string engine;
    std::string approach;
    std::string rule;
    std::vector<double> lbss;
    std::vector<double> ubss;
    std::string out_dir;
    std::optional<std::size_t> workers;
    bool grid = false;
    run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Run this seed only");
    run->add_option("--engine", engine, "nsga2 | spea2 | moead");
    run->add_option("--approach", approach, "canonical | ssc | scd | sdo");
    run->add_option("--rule", rule, "Semantic distance rule: eq1 | eq2");
    run->add_option("--lbss", lbss, "LBSS value(s); several values form a grid with --ubss");
    run->add_option("--ubss", ubss, "UBSS value(s); several values form a grid with --lbss");
    run->add_flag("--grid", grid, "Sweep the default 16-configuration bounds grid");
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--workers", workers, "Evaluation threads (0 = all cores)");

    auto* sum = app.add_subcommand("summarize", "Summarize the run results in a directory");
    std::string in_dir;
    sum->add_option("--in", in_dir, "Directory holding run results")->required();

    auto* synth = app.add_subcommand("gen-synth", "Write a synthetic imbalanced 2-feature dataset");
    std::string synth_out;
    std::size_t n = 200;
    double imbalance = 9.0;
    std::uint64_t synth_seed = 1;
    synth->add_option("--out", synth_out, "CSV file to write")->required();
    synth->add_option("--n", n, "Number of rows");
    synth->add_option("--imbalance", imbalance, "Majority cases per minority case");
    synth->add_option("--seed", synth_seed, "Generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto cfg = read_config(config_path);
            if (seed) {
                cfg.seeds = { *seed };
            }
            if (!engine.empty()) {
                cfg.engine = parse_engine(engine);
            }
            if (!approach.empty()) {
                cfg.semantic.approach = parse_approach(approach);
            }
            if (!rule.empty()) {
                cfg.semantic.distance_rule = parse_distance_rule(rule);
            }
            if (grid) {
                cfg.lbss_grid = kDefaultLbssGrid;
                cfg.ubss_grid = kDefaultUbssGrid;
            }
            if (lbss.size() > 1 || ubss.size() > 1) {
                cfg.lbss_grid = lbss.empty() ? std::vector { cfg.semantic.bounds.lbss } : lbss;
                cfg.ubss_grid = ubss.empty() ? std::vector { cfg.semantic.bounds.ubss } : ubss;
            } else {
                if (lbss.size() == 1) {
                    cfg.semantic.bounds.lbss = lbss.front();
                }
                if (ubss.size() == 1) {
                    cfg.semantic.bounds.ubss = ubss.front();
                }
            }
            if (!out_dir.empty()) {
                cfg.out_dir = out_dir;
            }
            if (workers) {
                cfg.workers = *workers;
            }
            auto const results = run_experiment(cfg);
            for (auto const& r : results) {
                std::cout << result_stem(r.config, r.seed) << ": hv=" << r.final.hypervolume
                          << " unique=" << r.final.unique_count << " front=" << r.final.front_size
                          << " mean_nodes=" << r.final.mean_nodes << " (" << r.wall_seconds << " s)\n";
            }
        } else if (*sum) {
            auto const summary = summarize(load_results(in_dir));
            write_atomic(std::filesystem::path(in_dir) / "summary.csv", summary_csv(summary));
            write_atomic(std::filesystem::path(in_dir) / "ratios.csv", ratios_csv(summary));
            print_summary(summary);
        } else if (*synth) {
            write_synthetic(synth_out, n, imbalance, synth_seed);
        }
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
