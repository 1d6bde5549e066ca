#ifndef SEMGP_HARNESS_HPP
#define SEMGP_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semgp/semantic_emo.hpp"

namespace semgp {

// Placeholder sweep with the 16-configuration shape used in the bounds study.
inline std::vector<double> const kDefaultLbssGrid { 0.001, 0.01, 0.1, 0.25 };
inline std::vector<double> const kDefaultUbssGrid { 0.25, 0.5, 0.75, 1.0 };

struct DatasetConfig {
    std::string path;
    int label_column = -1;
    std::optional<std::string> positive_label;
    // 1.0 trains on every case and skips the test split.
    double train_fraction = 1.0;
    std::uint64_t split_seed = 0;
    bool min_max_scale = false;
};

struct ExperimentConfig {
    DatasetConfig dataset;
    EngineKind engine = EngineKind::Nsga2;
    SemanticConfig semantic;
    // When both are non-empty, runs cover their cross product.
    std::vector<double> lbss_grid;
    std::vector<double> ubss_grid;
    EngineParams gp;
    std::size_t generations = 30;
    double constant_low = -1.0;
    double constant_high = 1.0;
    std::vector<std::uint64_t> seeds { 1 };
    std::string out_dir = "results";
    std::size_t workers = 1;
    UniqueBy unique_by = UniqueBy::Objectives;

    void validate() const;
};

void to_json(nlohmann::json& j, ExperimentConfig const& c);
void from_json(nlohmann::json const& j, ExperimentConfig& c);

// Bounds to run: the configured pair, or the valid part of the grid.
auto expand_bounds(ExperimentConfig const& cfg) -> std::vector<SimilarityBounds>;

struct FrontEntry {
    std::string program;
    ObjectiveVector objectives;
    std::size_t nodes = 0;
    std::optional<ObjectiveVector> test_objectives;

    auto operator==(FrontEntry const&) const -> bool = default;
};

struct FinalMetrics {
    double hypervolume = 0.0;
    std::size_t unique_count = 0;
    double mean_nodes = 0.0;
    std::size_t front_size = 0;
    std::optional<double> test_hypervolume;

    auto operator==(FinalMetrics const&) const -> bool = default;
};

struct RunResult {
    ExperimentConfig config; // single seed and single bounds pair
    std::uint64_t seed = 0;
    std::size_t train_cases = 0;
    std::size_t test_cases = 0;
    std::size_t n_features = 0;
    std::string positive_label;
    FinalMetrics final;
    std::vector<FrontEntry> front;
    std::vector<GenerationStats> generations;
    std::size_t ssc_accepted = 0;
    std::size_t ssc_attempted = 0;
    double wall_seconds = 0.0; // kept out of the result file so reruns are byte-identical
};

auto to_json(RunResult const& r) -> nlohmann::json;
auto run_result_from_json(nlohmann::json const& j) -> RunResult;

auto result_stem(ExperimentConfig const& single, std::uint64_t seed) -> std::string;
auto generations_csv(RunResult const& r) -> std::string;

// Writes via a temporary file and rename.
void write_atomic(std::filesystem::path const& path, std::string const& contents);

struct LoadedData {
    Dataset train;
    std::optional<Dataset> test;
};

auto load_experiment_data(DatasetConfig const& cfg) -> LoadedData;

// Runs one seed of a single-bounds configuration without touching disk.
auto run_single(ExperimentConfig const& single, LoadedData const& data, std::uint64_t seed) -> RunResult;

// One result per (bounds, seed); each is written to out_dir as
// <stem>.json, <stem>.csv and <stem>.timing.json before returning.
auto run_experiment(ExperimentConfig const& cfg) -> std::vector<RunResult>;

auto load_results(std::filesystem::path const& dir) -> std::vector<RunResult>;

struct OrderStats {
    double mean = 0.0;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
};

auto order_stats(std::vector<double> values) -> OrderStats;

struct GroupSummary {
    std::string label;
    std::size_t runs = 0;
    OrderStats hypervolume;
    OrderStats unique_count;
    OrderStats mean_nodes;
};

struct RatioRow {
    std::string numerator;
    std::string denominator;
    double ratio = 0.0;
};

struct Summary {
    std::vector<GroupSummary> groups;
    std::vector<RatioRow> unique_ratios; // median unique_count, every ordered pair of groups
};

auto config_label(ExperimentConfig const& single) -> std::string;
auto summarize(std::vector<RunResult> const& results) -> Summary;
auto summary_csv(Summary const& s) -> std::string;
auto ratios_csv(Summary const& s) -> std::string;

// Two Gaussian blobs in 2-D; minority:majority is 1:imbalance.
void write_synthetic(std::filesystem::path const& path, std::size_t n, double imbalance, std::uint64_t seed);

} // namespace semgp

#endif
