#ifndef SEMGP_SEMANTIC_EMO_HPP
#define SEMGP_SEMANTIC_EMO_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semgp/engine.hpp"
#include "semgp/metrics.hpp"
#include "semgp/semantics.hpp"

namespace semgp {

enum class Approach { Canonical, Ssc, Scd, Sdo };

auto to_string(Approach a) -> std::string_view;
auto to_string(EngineKind e) -> std::string_view;
auto to_string(DistanceRule r) -> std::string_view;
auto parse_approach(std::string_view s) -> Approach;
auto parse_engine(std::string_view s) -> EngineKind;
auto parse_distance_rule(std::string_view s) -> DistanceRule;

struct SemanticConfig {
    Approach approach = Approach::Canonical;
    SimilarityBounds bounds { 0.01, 0.5 };
    DistanceRule distance_rule = DistanceRule::Band;
    std::size_t ssc_max_trials = 10;
    double ssc_subset_fraction = 1.0;
    // Compare whole-parent semantics instead of the exchanged subtrees.
    bool ssc_whole_parent = false;
    // Permit combinations rejected by default (SCD under MOEA/D).
    bool allow_limitation_combos = false;

    void validate() const;
};

// ---- SSC ----------------------------------------------------------------

struct SscOutcome {
    Program first;
    Program second;
    std::size_t trials = 0;
    bool accepted = false;
    double distance = 0.0; // of the last trial that produced a swap
};

// Chooses swap points for one trial; nullopt means no depth-valid pair.
using SwapPointPicker = std::function<std::optional<SwapPoints>(Program const&, Program const&, Rng&)>;

// Retries subtree crossover until the semantic distance of the exchanged
// material falls in [lbss, ubss]; after ssc_max_trials the last trial's
// offspring are returned. `subset` restricts the cases used (all when empty).
auto ssc_crossover(Individual const& a, Individual const& b, SemanticConfig const& cfg, Dataset const& ds,
    std::span<std::size_t const> subset, SwapPointPicker const& picker, Rng& rng) -> SscOutcome;

class SscVariation final : public Variation {
public:
    SscVariation(PrimitiveSet primitives, EngineParams const& params, SemanticConfig cfg, Dataset const& ds,
        std::vector<std::size_t> subset);

    auto crossover(Individual const& a, Individual const& b, Rng& rng) -> std::pair<Program, Program> override;

    [[nodiscard]] auto accepted() const -> std::size_t { return accepted_; }
    [[nodiscard]] auto attempted() const -> std::size_t { return attempted_; }

private:
    SemanticConfig cfg_;
    Dataset const* ds_;
    std::vector<std::size_t> subset_;
    SwapPointPicker picker_;
    std::size_t accepted_ = 0;
    std::size_t attempted_ = 0;
};

// Seeded random subset of case indices covering `fraction` of n (at least one).
auto sample_case_subset(std::size_t n, double fraction, Rng& rng) -> std::vector<std::size_t>;

// ---- SCD / SDO ----------------------------------------------------------

// eq1 or eq2 distance count of every member against the pivot.
auto scd_assign(std::span<Semantics const> members, Pivot const& pivot, SemanticConfig const& cfg)
    -> std::vector<double>;

// Third objective: -d / l, where d is the configured distance to the pivot.
auto sdo_criterion(Semantics const& semantics, Pivot const& pivot, SemanticConfig const& cfg) -> double;

// Resets every member to its base objectives and appends the criterion.
void sdo_extend(Population& pop, Pivot const& pivot, SemanticConfig const& cfg);

// Pivot from the first front of `members` on their base objectives.
auto pivot_from_first_front(Population const& members, Rng& rng) -> Pivot;

class ScdHook final : public SelectionHook {
public:
    explicit ScdHook(SemanticConfig cfg);

    void prepare(Population& merged, Rng& rng) override;
    [[nodiscard]] auto replaces_density() const -> bool override { return true; }
    [[nodiscard]] auto density(Population const& merged) const -> std::vector<double> override;
    [[nodiscard]] auto pivot() const -> std::optional<Pivot> const& { return pivot_; }

private:
    SemanticConfig cfg_;
    std::optional<Pivot> pivot_;
};

class SdoHook final : public SelectionHook {
public:
    explicit SdoHook(SemanticConfig cfg);

    [[nodiscard]] auto extra_objectives() const -> std::size_t override { return 1; }
    void prepare(Population& merged, Rng& rng) override;
    void extend(Individual& ind) const override;
    [[nodiscard]] auto pivot() const -> std::optional<Pivot> const& { return pivot_; }

private:
    SemanticConfig cfg_;
    std::optional<Pivot> pivot_;
};

// ---- Runs ---------------------------------------------------------------

struct FrontMember {
    Program program;
    ObjectiveVector objectives; // (1 - TPR, 1 - TNR) on the training data
    std::size_t nodes = 0;
    std::optional<ObjectiveVector> test_objectives;
    Semantics semantics;
};

struct VariantResult {
    std::vector<FrontMember> front;
    std::vector<GenerationStats> stats;
    std::size_t ssc_accepted = 0;
    std::size_t ssc_attempted = 0;
};

struct RunOptions {
    std::size_t generations = 30; // populations recorded, including the initial one
    std::size_t workers = 1;
    UniqueBy unique_by = UniqueBy::Objectives;
    // Called after the initial population and after each step.
    std::function<void(Engine const&, GenerationStats const&)> observer;
};

auto run_variant(EngineKind engine, SemanticConfig const& cfg, EngineParams const& params,
    PrimitiveSet const& primitives, Dataset const& train, Dataset const* test, std::uint64_t seed,
    RunOptions const& options) -> VariantResult;

} // namespace semgp

#endif
