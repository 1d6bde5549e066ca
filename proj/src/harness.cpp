#include "semgp/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

namespace semgp {

using nlohmann::json;

namespace {

auto format_double(double v) -> std::string
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf {};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return { buf.data(), ptr };
}

// JSON has no infinity; unbounded values are written as the string "inf".
auto bound_to_json(double v) -> json
{
    return std::isinf(v) ? json("inf") : json(v);
}

auto bound_from_json(json const& j) -> double
{
    if (j.is_string()) {
        auto const s = j.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "infinity") {
            return std::numeric_limits<double>::infinity();
        }
        throw Error("bad bound value '" + s + "'");
    }
    return j.get<double>();
}

template <typename T>
void read_opt(json const& j, char const* key, T& out)
{
    if (j.contains(key) && !j.at(key).is_null()) {
        out = j.at(key).get<T>();
    }
}

auto stats_to_json(GenerationStats const& g) -> json
{
    return { { "generation", g.generation }, { "hypervolume", g.hypervolume }, { "unique_count", g.unique_count },
        { "mean_nodes", g.mean_nodes }, { "front_size", g.front_size } };
}

auto stats_from_json(json const& j) -> GenerationStats
{
    GenerationStats g;
    g.generation = j.at("generation").get<std::size_t>();
    g.hypervolume = j.at("hypervolume").get<double>();
    g.unique_count = j.at("unique_count").get<std::size_t>();
    g.mean_nodes = j.at("mean_nodes").get<double>();
    g.front_size = j.at("front_size").get<std::size_t>();
    return g;
}

auto single_config(ExperimentConfig const& cfg, SimilarityBounds const& bounds, std::uint64_t seed)
    -> ExperimentConfig
{
    auto out = cfg;
    out.semantic.bounds = bounds;
    out.lbss_grid.clear();
    out.ubss_grid.clear();
    out.seeds = { seed };
    return out;
}

constexpr char const* kResultFormat = "semgp-run/1";

} // namespace

void ExperimentConfig::validate() const
{
    if (dataset.path.empty()) {
        throw Error("config: dataset.path is required");
    }
    if (!(dataset.train_fraction > 0.0 && dataset.train_fraction <= 1.0)) {
        throw Error("config: dataset.train_fraction must lie in (0, 1]");
    }
    if (seeds.empty()) {
        throw Error("config: at least one seed is required");
    }
    if (generations < 1) {
        throw Error("config: generations must be at least 1");
    }
    if (lbss_grid.empty() != ubss_grid.empty()) {
        throw Error("config: lbss_grid and ubss_grid must be given together");
    }
    if (!(constant_low <= constant_high)) {
        throw Error("config: constant range is empty");
    }
    gp.validate();
    semantic.validate();
    if (semantic.approach == Approach::Scd && engine == EngineKind::Moead && !semantic.allow_limitation_combos) {
        throw Error("config: scd with moead is rejected unless semantic.allow_limitation_combos is set");
    }
}

void to_json(json& j, ExperimentConfig const& c)
{
    json ds = { { "path", c.dataset.path }, { "label_column", c.dataset.label_column },
        { "train_fraction", c.dataset.train_fraction }, { "split_seed", c.dataset.split_seed },
        { "min_max_scale", c.dataset.min_max_scale } };
    ds["positive_label"] = c.dataset.positive_label ? json(*c.dataset.positive_label) : json(nullptr);

    json sem = { { "approach", to_string(c.semantic.approach) }, { "lbss", bound_to_json(c.semantic.bounds.lbss) },
        { "ubss", bound_to_json(c.semantic.bounds.ubss) }, { "distance_rule", to_string(c.semantic.distance_rule) },
        { "ssc_max_trials", c.semantic.ssc_max_trials }, { "ssc_subset_fraction", c.semantic.ssc_subset_fraction },
        { "ssc_whole_parent", c.semantic.ssc_whole_parent },
        { "allow_limitation_combos", c.semantic.allow_limitation_combos } };

    auto const& g = c.gp;
    json gp = { { "pop_size", g.pop_size }, { "generations", c.generations }, { "min_init_depth", g.min_init_depth },
        { "max_init_depth", g.max_init_depth }, { "max_depth", g.max_depth },
        { "mutation_subtree_depth", g.mutation_subtree_depth }, { "crossover_rate", g.crossover_rate },
        { "mutation_rate", g.mutation_rate }, { "function_bias", g.function_bias },
        { "archive_size", g.archive_size }, { "neighborhood_size", g.neighborhood_size },
        { "max_replacements", g.max_replacements }, { "neighbor_mating_probability", g.neighbor_mating_probability },
        { "constant_low", c.constant_low }, { "constant_high", c.constant_high } };

    json lg = json::array();
    for (auto v : c.lbss_grid) {
        lg.push_back(bound_to_json(v));
    }
    json ug = json::array();
    for (auto v : c.ubss_grid) {
        ug.push_back(bound_to_json(v));
    }

    j = json { { "dataset", ds }, { "engine", to_string(c.engine) }, { "semantic", sem }, { "lbss_grid", lg },
        { "ubss_grid", ug }, { "gp", gp }, { "seeds", c.seeds }, { "out_dir", c.out_dir }, { "workers", c.workers },
        { "unique_by", c.unique_by == UniqueBy::Objectives ? "objectives" : "semantics" } };
}

void from_json(json const& j, ExperimentConfig& c)
{
    c = ExperimentConfig {};
    if (j.contains("dataset")) {
        auto const& d = j.at("dataset");
        read_opt(d, "path", c.dataset.path);
        read_opt(d, "label_column", c.dataset.label_column);
        if (d.contains("positive_label") && !d.at("positive_label").is_null()) {
            c.dataset.positive_label = d.at("positive_label").get<std::string>();
        }
        read_opt(d, "train_fraction", c.dataset.train_fraction);
        read_opt(d, "split_seed", c.dataset.split_seed);
        read_opt(d, "min_max_scale", c.dataset.min_max_scale);
    }
    if (j.contains("engine")) {
        c.engine = parse_engine(j.at("engine").get<std::string>());
    }
    if (j.contains("semantic")) {
        auto const& s = j.at("semantic");
        if (s.contains("approach")) {
            c.semantic.approach = parse_approach(s.at("approach").get<std::string>());
        }
        if (s.contains("lbss")) {
            c.semantic.bounds.lbss = bound_from_json(s.at("lbss"));
        }
        if (s.contains("ubss")) {
            c.semantic.bounds.ubss = bound_from_json(s.at("ubss"));
        }
        if (s.contains("distance_rule")) {
            c.semantic.distance_rule = parse_distance_rule(s.at("distance_rule").get<std::string>());
        }
        read_opt(s, "ssc_max_trials", c.semantic.ssc_max_trials);
        read_opt(s, "ssc_subset_fraction", c.semantic.ssc_subset_fraction);
        read_opt(s, "ssc_whole_parent", c.semantic.ssc_whole_parent);
        read_opt(s, "allow_limitation_combos", c.semantic.allow_limitation_combos);
    }
    for (auto [key, grid] : { std::pair { "lbss_grid", &c.lbss_grid }, std::pair { "ubss_grid", &c.ubss_grid } }) {
        if (j.contains(key)) {
            for (auto const& v : j.at(key)) {
                grid->push_back(bound_from_json(v));
            }
        }
    }
    if (j.contains("gp")) {
        auto const& g = j.at("gp");
        read_opt(g, "pop_size", c.gp.pop_size);
        read_opt(g, "generations", c.generations);
        read_opt(g, "min_init_depth", c.gp.min_init_depth);
        read_opt(g, "max_init_depth", c.gp.max_init_depth);
        read_opt(g, "max_depth", c.gp.max_depth);
        read_opt(g, "mutation_subtree_depth", c.gp.mutation_subtree_depth);
        read_opt(g, "crossover_rate", c.gp.crossover_rate);
        read_opt(g, "mutation_rate", c.gp.mutation_rate);
        read_opt(g, "function_bias", c.gp.function_bias);
        read_opt(g, "archive_size", c.gp.archive_size);
        read_opt(g, "neighborhood_size", c.gp.neighborhood_size);
        read_opt(g, "max_replacements", c.gp.max_replacements);
        read_opt(g, "neighbor_mating_probability", c.gp.neighbor_mating_probability);
        read_opt(g, "constant_low", c.constant_low);
        read_opt(g, "constant_high", c.constant_high);
    }
    if (j.contains("seeds")) {
        c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    }
    read_opt(j, "out_dir", c.out_dir);
    read_opt(j, "workers", c.workers);
    if (j.contains("unique_by")) {
        auto const u = j.at("unique_by").get<std::string>();
        if (u == "objectives") {
            c.unique_by = UniqueBy::Objectives;
        } else if (u == "semantics") {
            c.unique_by = UniqueBy::Semantics;
        } else {
            throw Error("config: unique_by must be 'objectives' or 'semantics'");
        }
    }
}

auto expand_bounds(ExperimentConfig const& cfg) -> std::vector<SimilarityBounds>
{
    if (cfg.lbss_grid.empty()) {
        return { cfg.semantic.bounds };
    }
    std::vector<SimilarityBounds> out;
    for (auto l : cfg.lbss_grid) {
        for (auto u : cfg.ubss_grid) {
            SimilarityBounds b { l, u };
            try {
                b.validate();
            } catch (Error const& e) {
                std::cerr << "skipping bounds (" << format_double(l) << ", " << format_double(u) << "): " << e.what()
                          << '\n';
                continue;
            }
            out.push_back(b);
        }
    }
    if (out.empty()) {
        throw Error("bounds grid has no valid (lbss, ubss) pair");
    }
    return out;
}

auto to_json(RunResult const& r) -> json
{
    json front = json::array();
    for (auto const& f : r.front) {
        json e = { { "program", f.program }, { "objectives", f.objectives }, { "tpr", 1.0 - f.objectives[0] },
            { "tnr", 1.0 - f.objectives[1] }, { "nodes", f.nodes } };
        e["test_objectives"] = f.test_objectives ? json(*f.test_objectives) : json(nullptr);
        front.push_back(std::move(e));
    }
    json gens = json::array();
    for (auto const& g : r.generations) {
        gens.push_back(stats_to_json(g));
    }
    json fin = { { "hypervolume", r.final.hypervolume }, { "unique_count", r.final.unique_count },
        { "mean_nodes", r.final.mean_nodes }, { "front_size", r.final.front_size } };
    fin["test_hypervolume"] = r.final.test_hypervolume ? json(*r.final.test_hypervolume) : json(nullptr);

    // Where and how fast a run executed does not change its outcome; leaving
    // these out keeps result files identical across machines and worker counts.
    json config = r.config;
    config.erase("out_dir");
    config.erase("workers");

    return json { { "format", kResultFormat }, { "config", config }, { "seed", r.seed },
        { "data",
            { { "train_cases", r.train_cases }, { "test_cases", r.test_cases }, { "n_features", r.n_features },
                { "positive_label", r.positive_label } } },
        { "hypervolume",
            { { "space", "minimization (1 - TPR, 1 - TNR), unnormalized" },
                { "reference_point", { kReferencePoint[0], kReferencePoint[1] } }, { "metrics_on", "train" } } },
        { "final", fin }, { "front", front }, { "generations", gens },
        { "ssc", { { "accepted", r.ssc_accepted }, { "attempted", r.ssc_attempted } } } };
}

auto run_result_from_json(json const& j) -> RunResult
{
    if (j.value("format", "") != kResultFormat) {
        throw Error("not a run result (format tag missing or unknown)");
    }
    RunResult r;
    r.config = j.at("config").get<ExperimentConfig>();
    r.seed = j.at("seed").get<std::uint64_t>();
    auto const& d = j.at("data");
    r.train_cases = d.at("train_cases").get<std::size_t>();
    r.test_cases = d.at("test_cases").get<std::size_t>();
    r.n_features = d.at("n_features").get<std::size_t>();
    r.positive_label = d.at("positive_label").get<std::string>();
    auto const& f = j.at("final");
    r.final.hypervolume = f.at("hypervolume").get<double>();
    r.final.unique_count = f.at("unique_count").get<std::size_t>();
    r.final.mean_nodes = f.at("mean_nodes").get<double>();
    r.final.front_size = f.at("front_size").get<std::size_t>();
    if (!f.at("test_hypervolume").is_null()) {
        r.final.test_hypervolume = f.at("test_hypervolume").get<double>();
    }
    for (auto const& e : j.at("front")) {
        FrontEntry fe;
        fe.program = e.at("program").get<std::string>();
        fe.objectives = e.at("objectives").get<ObjectiveVector>();
        fe.nodes = e.at("nodes").get<std::size_t>();
        if (!e.at("test_objectives").is_null()) {
            fe.test_objectives = e.at("test_objectives").get<ObjectiveVector>();
        }
        r.front.push_back(std::move(fe));
    }
    for (auto const& g : j.at("generations")) {
        r.generations.push_back(stats_from_json(g));
    }
    r.ssc_accepted = j.at("ssc").at("accepted").get<std::size_t>();
    r.ssc_attempted = j.at("ssc").at("attempted").get<std::size_t>();
    return r;
}

auto config_label(ExperimentConfig const& single) -> std::string
{
    auto const& s = single.semantic;
    return std::string(to_string(single.engine)) + "/" + std::string(to_string(s.approach)) + "/"
        + std::string(to_string(s.distance_rule)) + "/l" + format_double(s.bounds.lbss) + "/u"
        + format_double(s.bounds.ubss);
}

auto result_stem(ExperimentConfig const& single, std::uint64_t seed) -> std::string
{
    auto const& s = single.semantic;
    return std::string(to_string(single.engine)) + "_" + std::string(to_string(s.approach)) + "_"
        + std::string(to_string(s.distance_rule)) + "_l" + format_double(s.bounds.lbss) + "_u"
        + format_double(s.bounds.ubss) + "_s" + std::to_string(seed);
}

auto generations_csv(RunResult const& r) -> std::string
{
    std::string out = "generation,hypervolume,unique_count,mean_nodes,front_size\n";
    for (auto const& g : r.generations) {
        out += std::to_string(g.generation) + "," + format_double(g.hypervolume) + "," + std::to_string(g.unique_count)
            + "," + format_double(g.mean_nodes) + "," + std::to_string(g.front_size) + "\n";
    }
    return out;
}

void write_atomic(std::filesystem::path const& path, std::string const& contents)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out << contents;
        if (!out.flush()) {
            throw Error("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

auto load_experiment_data(DatasetConfig const& cfg) -> LoadedData
{
    auto full = load_csv(cfg.path, CsvOptions { cfg.label_column, cfg.positive_label });
    LoadedData data;
    if (cfg.train_fraction < 1.0) {
        auto [train, test] = stratified_split(full, cfg.train_fraction, cfg.split_seed);
        data.train = std::move(train);
        data.test = std::move(test);
    } else {
        data.train = std::move(full);
    }
    if (cfg.min_max_scale) {
        auto const scaler = MinMaxScaler::fit(data.train);
        data.train = scaler.transform(data.train);
        if (data.test) {
            data.test = scaler.transform(*data.test);
        }
    }
    return data;
}

auto run_single(ExperimentConfig const& single, LoadedData const& data, std::uint64_t seed) -> RunResult
{
    PrimitiveSet ps;
    ps.n_features = data.train.n_features();
    ps.constant_low = single.constant_low;
    ps.constant_high = single.constant_high;

    RunOptions opts;
    opts.generations = single.generations;
    opts.workers = single.workers;
    opts.unique_by = single.unique_by;

    auto const start = std::chrono::steady_clock::now();
    auto const v = run_variant(single.engine, single.semantic, single.gp, ps, data.train,
        data.test ? &*data.test : nullptr, seed, opts);
    auto const stop = std::chrono::steady_clock::now();

    RunResult r;
    r.config = single;
    r.seed = seed;
    r.train_cases = data.train.size();
    r.test_cases = data.test ? data.test->size() : 0;
    r.n_features = data.train.n_features();
    r.positive_label = data.train.positive_token();
    r.generations = v.stats;
    r.ssc_accepted = v.ssc_accepted;
    r.ssc_attempted = v.ssc_attempted;
    r.wall_seconds = std::chrono::duration<double>(stop - start).count();

    std::vector<ObjectiveVector> train_objs;
    std::vector<ObjectiveVector> test_objs;
    for (auto const& m : v.front) {
        r.front.push_back({ m.program.to_string(), m.objectives, m.nodes, m.test_objectives });
        train_objs.push_back(m.objectives);
        if (m.test_objectives) {
            test_objs.push_back(*m.test_objectives);
        }
    }
    auto const& last = v.stats.back();
    r.final.hypervolume = last.hypervolume;
    r.final.unique_count = last.unique_count;
    r.final.mean_nodes = last.mean_nodes;
    r.final.front_size = last.front_size;
    if (data.test) {
        r.final.test_hypervolume = hypervolume_2d(test_objs);
    }
    return r;
}

auto run_experiment(ExperimentConfig const& cfg) -> std::vector<RunResult>
{
    cfg.validate();
    auto const data = load_experiment_data(cfg.dataset);
    std::filesystem::create_directories(cfg.out_dir);

    std::vector<RunResult> results;
    for (auto const& bounds : expand_bounds(cfg)) {
        for (auto seed : cfg.seeds) {
            auto const single = single_config(cfg, bounds, seed);
            auto r = run_single(single, data, seed);
            auto const stem = std::filesystem::path(cfg.out_dir) / result_stem(single, seed);
            write_atomic(stem.string() + ".json", to_json(r).dump(2) + "\n");
            write_atomic(stem.string() + ".csv", generations_csv(r));
            write_atomic(stem.string() + ".timing.json",
                json { { "wall_seconds", r.wall_seconds } }.dump() + "\n");
            results.push_back(std::move(r));
        }
    }
    return results;
}

auto load_results(std::filesystem::path const& dir) -> std::vector<RunResult>
{
    if (!std::filesystem::is_directory(dir)) {
        throw Error("not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (auto const& entry : std::filesystem::directory_iterator(dir)) {
        auto const& p = entry.path();
        if (entry.is_regular_file() && p.extension() == ".json" && p.stem().extension() != ".timing") {
            files.push_back(p);
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<RunResult> out;
    for (auto const& p : files) {
        std::ifstream in(p);
        json j;
        try {
            in >> j;
        } catch (json::exception const& e) {
            throw Error("cannot parse " + p.string() + ": " + e.what());
        }
        if (!j.is_object() || j.value("format", "") != kResultFormat) {
            continue;
        }
        out.push_back(run_result_from_json(j));
    }
    return out;
}

auto order_stats(std::vector<double> values) -> OrderStats
{
    if (values.empty()) {
        throw Error("order statistics of an empty sample");
    }
    std::sort(values.begin(), values.end());
    OrderStats s;
    double sum = 0.0;
    for (auto v : values) {
        sum += v;
    }
    auto const n = values.size();
    s.mean = sum / static_cast<double>(n);
    s.median = n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
    s.min = values.front();
    s.max = values.back();
    return s;
}

auto summarize(std::vector<RunResult> const& results) -> Summary
{
    if (results.empty()) {
        throw Error("nothing to summarize");
    }
    std::map<std::string, std::vector<RunResult const*>> groups;
    for (auto const& r : results) {
        groups[config_label(r.config)].push_back(&r);
    }
    Summary s;
    for (auto const& [label, runs] : groups) {
        std::vector<double> hv;
        std::vector<double> uc;
        std::vector<double> nodes;
        for (auto const* r : runs) {
            hv.push_back(r->final.hypervolume);
            uc.push_back(static_cast<double>(r->final.unique_count));
            nodes.push_back(r->final.mean_nodes);
        }
        s.groups.push_back({ label, runs.size(), order_stats(hv), order_stats(uc), order_stats(nodes) });
    }
    for (auto const& a : s.groups) {
        for (auto const& b : s.groups) {
            if (&a == &b || b.unique_count.median == 0.0) {
                continue;
            }
            s.unique_ratios.push_back({ a.label, b.label, a.unique_count.median / b.unique_count.median });
        }
    }
    return s;
}

auto summary_csv(Summary const& s) -> std::string
{
    std::string out = "config,runs";
    for (auto const* metric : { "hypervolume", "unique_count", "mean_nodes" }) {
        for (auto const* stat : { "mean", "median", "min", "max" }) {
            out += std::string(",") + metric + "_" + stat;
        }
    }
    out += "\n";
    for (auto const& g : s.groups) {
        out += g.label + "," + std::to_string(g.runs);
        for (auto const* os : { &g.hypervolume, &g.unique_count, &g.mean_nodes }) {
            for (auto v : { os->mean, os->median, os->min, os->max }) {
                out += "," + format_double(v);
            }
        }
        out += "\n";
    }
    return out;
}

auto ratios_csv(Summary const& s) -> std::string
{
    std::string out = "numerator,denominator,median_unique_ratio\n";
    for (auto const& r : s.unique_ratios) {
        out += r.numerator + "," + r.denominator + "," + format_double(r.ratio) + "\n";
    }
    return out;
}

void write_synthetic(std::filesystem::path const& path, std::size_t n, double imbalance, std::uint64_t seed)
{
    if (n < 4) {
        throw Error("synthetic dataset needs at least 4 rows");
    }
    if (!(imbalance >= 1.0)) {
        throw Error("imbalance ratio must be at least 1");
    }
    auto positives = static_cast<std::size_t>(std::llround(static_cast<double>(n) / (1.0 + imbalance)));
    positives = std::clamp<std::size_t>(positives, 2, n - 2);

    Rng rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    struct Row {
        double x0;
        double x1;
        bool positive;
    };
    std::vector<Row> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool const pos = i < positives;
        double const centre = pos ? 1.0 : -0.5;
        auto const x0 = centre + noise(rng);
        auto const x1 = centre + noise(rng);
        rows.push_back({ x0, x1, pos });
    }
    std::shuffle(rows.begin(), rows.end(), rng);

    std::string out = "x0,x1,label\n";
    for (auto const& r : rows) {
        out += format_double(r.x0) + "," + format_double(r.x1) + "," + (r.positive ? "pos" : "neg") + "\n";
    }
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    write_atomic(path, out);
}

} // namespace semgp
