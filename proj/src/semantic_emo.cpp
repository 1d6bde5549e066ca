#include "semgp/semantic_emo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace semgp {

auto to_string(Approach a) -> std::string_view
{
    switch (a) {
    case Approach::Canonical: return "canonical";
    case Approach::Ssc: return "ssc";
    case Approach::Scd: return "scd";
    case Approach::Sdo: return "sdo";
    }
    return "?";
}

auto to_string(EngineKind e) -> std::string_view
{
    switch (e) {
    case EngineKind::Nsga2: return "nsga2";
    case EngineKind::Spea2: return "spea2";
    case EngineKind::Moead: return "moead";
    }
    return "?";
}

auto to_string(DistanceRule r) -> std::string_view
{
    return r == DistanceRule::AboveUpper ? "eq1" : "eq2";
}

auto parse_approach(std::string_view s) -> Approach
{
    for (auto a : { Approach::Canonical, Approach::Ssc, Approach::Scd, Approach::Sdo }) {
        if (s == to_string(a)) {
            return a;
        }
    }
    throw Error("unknown approach '" + std::string(s) + "' (expected canonical, ssc, scd or sdo)");
}

auto parse_engine(std::string_view s) -> EngineKind
{
    for (auto e : { EngineKind::Nsga2, EngineKind::Spea2, EngineKind::Moead }) {
        if (s == to_string(e)) {
            return e;
        }
    }
    throw Error("unknown engine '" + std::string(s) + "' (expected nsga2, spea2 or moead)");
}

auto parse_distance_rule(std::string_view s) -> DistanceRule
{
    if (s == "eq1") {
        return DistanceRule::AboveUpper;
    }
    if (s == "eq2") {
        return DistanceRule::Band;
    }
    throw Error("unknown distance rule '" + std::string(s) + "' (expected eq1 or eq2)");
}

void SemanticConfig::validate() const
{
    bounds.validate();
    if (ssc_max_trials < 1) {
        throw Error("ssc_max_trials must be at least 1");
    }
    if (!(ssc_subset_fraction > 0.0 && ssc_subset_fraction <= 1.0)) {
        throw Error("ssc_subset_fraction must lie in (0, 1]");
    }
}

// ---- SSC ----------------------------------------------------------------

auto ssc_crossover(Individual const& a, Individual const& b, SemanticConfig const& cfg, Dataset const& ds,
    std::span<std::size_t const> subset, SwapPointPicker const& picker, Rng& rng) -> SscOutcome
{
    std::optional<std::span<std::size_t const>> cases;
    if (!subset.empty()) {
        cases = subset;
    }
    SscOutcome out { a.tree, b.tree };
    for (std::size_t t = 1; t <= cfg.ssc_max_trials; ++t) {
        out.trials = t;
        auto const pts = picker(a.tree, b.tree, rng);
        if (!pts) {
            out.first = a.tree;
            out.second = b.tree;
            continue;
        }
        if (cfg.ssc_whole_parent) {
            out.distance = ssc_distance(a.semantics, b.semantics, cases);
        } else {
            auto const sa = evaluate_subtree(a.tree, pts->first, ds);
            auto const sb = evaluate_subtree(b.tree, pts->second, ds);
            out.distance = ssc_distance(sa, sb, cases);
        }
        std::tie(out.first, out.second) = crossover_at(a.tree, b.tree, *pts);
        if (cfg.bounds.contains(out.distance)) {
            out.accepted = true;
            return out;
        }
    }
    return out;
}

SscVariation::SscVariation(PrimitiveSet primitives, EngineParams const& params, SemanticConfig cfg,
    Dataset const& ds, std::vector<std::size_t> subset)
    : Variation(std::move(primitives), params)
    , cfg_(std::move(cfg))
    , ds_(&ds)
    , subset_(std::move(subset))
{
    cfg_.validate();
    picker_ = [params = crossover_params()](Program const& a, Program const& b, Rng& rng) {
        return select_swap_points(a, b, params, rng);
    };
}

auto SscVariation::crossover(Individual const& a, Individual const& b, Rng& rng) -> std::pair<Program, Program>
{
    auto out = ssc_crossover(a, b, cfg_, *ds_, subset_, picker_, rng);
    ++attempted_;
    accepted_ += out.accepted ? 1 : 0;
    return { std::move(out.first), std::move(out.second) };
}

auto sample_case_subset(std::size_t n, double fraction, Rng& rng) -> std::vector<std::size_t>
{
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto const take = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))), 1, n);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(take);
    std::sort(idx.begin(), idx.end());
    return idx;
}

// ---- SCD / SDO ----------------------------------------------------------

auto scd_assign(std::span<Semantics const> members, Pivot const& pivot, SemanticConfig const& cfg)
    -> std::vector<double>
{
    std::vector<double> out;
    out.reserve(members.size());
    for (auto const& s : members) {
        out.push_back(static_cast<double>(semantic_distance(s, pivot.semantics, cfg.bounds, cfg.distance_rule)));
    }
    return out;
}

auto sdo_criterion(Semantics const& semantics, Pivot const& pivot, SemanticConfig const& cfg) -> double
{
    if (semantics.empty()) {
        throw Error("semantic criterion needs evaluated semantics");
    }
    auto const d = semantic_distance(semantics, pivot.semantics, cfg.bounds, cfg.distance_rule);
    if (d == 0) {
        return 0.0;
    }
    return -static_cast<double>(d) / static_cast<double>(semantics.size());
}

void sdo_extend(Population& pop, Pivot const& pivot, SemanticConfig const& cfg)
{
    for (auto& ind : pop) {
        ind.objectives.resize(2);
        ind.objectives.push_back(sdo_criterion(ind.semantics, pivot, cfg));
    }
}

auto pivot_from_first_front(Population const& members, Rng& rng) -> Pivot
{
    std::vector<ObjectiveVector> base;
    base.reserve(members.size());
    for (auto const& m : members) {
        base.emplace_back(m.objectives.begin(), m.objectives.begin() + 2);
    }
    auto const first = nondominated_indices(base);
    std::vector<ObjectiveVector> front;
    front.reserve(first.size());
    for (auto i : first) {
        front.push_back(base[i]);
    }
    auto const crowding = crowding_distance(front);
    auto const k = select_pivot_index(crowding, rng);
    return { members[first[k]].semantics, k };
}

ScdHook::ScdHook(SemanticConfig cfg)
    : cfg_(std::move(cfg))
{
    cfg_.validate();
}

void ScdHook::prepare(Population& merged, Rng& rng)
{
    pivot_ = pivot_from_first_front(merged, rng);
}

auto ScdHook::density(Population const& merged) const -> std::vector<double>
{
    if (!pivot_) {
        throw Error("semantic crowding requested before a pivot was selected");
    }
    std::vector<Semantics> sems;
    sems.reserve(merged.size());
    for (auto const& m : merged) {
        sems.push_back(m.semantics);
    }
    return scd_assign(sems, *pivot_, cfg_);
}

SdoHook::SdoHook(SemanticConfig cfg)
    : cfg_(std::move(cfg))
{
    cfg_.validate();
}

void SdoHook::prepare(Population& merged, Rng& rng)
{
    pivot_ = pivot_from_first_front(merged, rng);
    sdo_extend(merged, *pivot_, cfg_);
}

void SdoHook::extend(Individual& ind) const
{
    if (!pivot_) {
        throw Error("semantic criterion requested before a pivot was selected");
    }
    ind.objectives.resize(2);
    ind.objectives.push_back(sdo_criterion(ind.semantics, *pivot_, cfg_));
}

// ---- Runs ---------------------------------------------------------------

namespace {

// Separate stream so that sampling the SSC subset leaves the run stream untouched.
constexpr std::uint64_t kSubsetStreamSalt = 0x5eed5ab5e7ULL;

} // namespace

auto run_variant(EngineKind engine_kind, SemanticConfig const& cfg, EngineParams const& params,
    PrimitiveSet const& primitives, Dataset const& train, Dataset const* test, std::uint64_t seed,
    RunOptions const& options) -> VariantResult
{
    cfg.validate();
    params.validate();
    if (options.generations < 1) {
        throw Error("at least one generation is required");
    }
    if (cfg.approach == Approach::Scd && engine_kind == EngineKind::Moead && !cfg.allow_limitation_combos) {
        throw Error("scd has no crowding step to replace under moead; set allow_limitation_combos to run it anyway");
    }

    Evaluator const evaluator(train, options.workers);
    std::unique_ptr<Variation> variation;
    if (cfg.approach == Approach::Ssc) {
        std::vector<std::size_t> subset;
        if (cfg.ssc_subset_fraction < 1.0) {
            Rng subset_rng(seed ^ kSubsetStreamSalt);
            subset = sample_case_subset(train.size(), cfg.ssc_subset_fraction, subset_rng);
        }
        variation = std::make_unique<SscVariation>(primitives, params, cfg, train, std::move(subset));
    } else {
        variation = std::make_unique<Variation>(primitives, params);
    }

    std::unique_ptr<SelectionHook> hook;
    switch (cfg.approach) {
    case Approach::Scd: hook = std::make_unique<ScdHook>(cfg); break;
    case Approach::Sdo: hook = std::make_unique<SdoHook>(cfg); break;
    default: hook = std::make_unique<SelectionHook>(); break;
    }

    Rng rng(seed);
    auto engine = make_engine(engine_kind, params, evaluator, *variation, *hook);

    VariantResult result;
    auto record = [&](std::size_t g) {
        auto const front = reported_front(engine->reporting_set());
        result.stats.push_back(generation_stats(g, engine->population(), front, options.unique_by));
        if (options.observer) {
            options.observer(*engine, result.stats.back());
        }
    };

    engine->initialize(rng);
    record(0);
    for (std::size_t g = 1; g < options.generations; ++g) {
        engine->step(rng);
        record(g);
    }

    for (auto& ind : reported_front(engine->reporting_set())) {
        FrontMember m;
        m.nodes = node_count(ind.tree);
        m.objectives = std::move(ind.objectives);
        if (test != nullptr) {
            m.test_objectives = classification_objectives(evaluate_semantics(ind.tree, *test), *test);
        }
        m.semantics = std::move(ind.semantics);
        m.program = std::move(ind.tree);
        result.front.push_back(std::move(m));
    }
    if (auto const* ssc = dynamic_cast<SscVariation const*>(variation.get())) {
        result.ssc_accepted = ssc->accepted();
        result.ssc_attempted = ssc->attempted();
    }
    return result;
}

} // namespace semgp
