#ifndef SEMGP_ENGINE_HPP
#define SEMGP_ENGINE_HPP

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "semgp/common.hpp"
#include "semgp/dataset.hpp"
#include "semgp/gp.hpp"
#include "semgp/objectives.hpp"
#include "semgp/pareto.hpp"
#include "semgp/program.hpp"

namespace semgp {

struct Individual {
    Program tree;
    Semantics semantics;
    ObjectiveVector objectives; // engine-facing; the first two entries are the base objectives
    std::size_t rank = 0;
    double density = 0.0; // larger is preferred (crowding or its semantic surrogate)
    double fitness = 0.0; // SPEA2, lower is preferred

    auto operator==(Individual const&) const -> bool = default;
};

using Population = std::vector<Individual>;

auto objectives_of(std::span<Individual const> pop) -> std::vector<ObjectiveVector>;

// Computes semantics and base objectives on the training data.
class Evaluator {
public:
    Evaluator(Dataset const& train, std::size_t workers = 1, double threshold = kDefaultThreshold);

    void evaluate(Individual& ind) const;
    // Evaluates every member; independent of the worker count.
    void evaluate(std::span<Individual> pop) const;

    [[nodiscard]] auto dataset() const -> Dataset const& { return *train_; }
    [[nodiscard]] auto threshold() const -> double { return threshold_; }

private:
    Dataset const* train_;
    std::size_t workers_;
    double threshold_;
};

struct EngineParams {
    std::size_t pop_size = 100;
    std::size_t min_init_depth = 2;
    std::size_t max_init_depth = 6;
    std::size_t max_depth = 17;
    std::size_t mutation_subtree_depth = 4;
    double crossover_rate = 0.9;
    double mutation_rate = 0.1;
    double function_bias = 0.9;
    std::size_t archive_size = 0; // SPEA2; 0 means pop_size
    std::size_t neighborhood_size = 20; // MOEA/D
    std::size_t max_replacements = 2; // MOEA/D
    double neighbor_mating_probability = 0.9; // MOEA/D

    void validate() const;
};

class Variation {
public:
    Variation(PrimitiveSet primitives, EngineParams const& params);
    virtual ~Variation() = default;

    virtual auto crossover(Individual const& a, Individual const& b, Rng& rng) -> std::pair<Program, Program>;
    [[nodiscard]] virtual auto mutate(Program const& p, Rng& rng) const -> Program;

    // Crossover with probability crossover_rate (copies otherwise), then
    // mutation of each child with probability mutation_rate.
    auto breed(Individual const& a, Individual const& b, Rng& rng) -> std::pair<Program, Program>;

    [[nodiscard]] auto primitives() const -> PrimitiveSet const& { return primitives_; }
    [[nodiscard]] auto crossover_params() const -> CrossoverParams { return crossover_; }

private:
    PrimitiveSet primitives_;
    CrossoverParams crossover_;
    std::size_t mutation_subtree_depth_;
    double crossover_rate_;
    double mutation_rate_;
};

// Extension point for environmental selection. The default does nothing,
// leaving the canonical engines untouched.
class SelectionHook {
public:
    virtual ~SelectionHook() = default;

    // Number of objectives appended to the base pair.
    [[nodiscard]] virtual auto extra_objectives() const -> std::size_t { return 0; }
    // Called on the merged population before ranking.
    virtual void prepare(Population& /*merged*/, Rng& /*rng*/) { }
    // Applies the current state of the hook to an individual created after prepare().
    virtual void extend(Individual& /*ind*/) const { }
    [[nodiscard]] virtual auto replaces_density() const -> bool { return false; }
    // One value per member of the population handed to prepare(); larger is preferred.
    [[nodiscard]] virtual auto density(Population const& /*merged*/) const -> std::vector<double> { return {}; }
};

class Engine {
public:
    virtual ~Engine() = default;

    virtual void initialize(Rng& rng) = 0;
    virtual void step(Rng& rng) = 0;

    [[nodiscard]] virtual auto population() const -> Population const& = 0;
    // Members from which the reported front is taken.
    [[nodiscard]] virtual auto reporting_set() const -> Population const& = 0;
};

// ---- NSGA-II ------------------------------------------------------------

// Ranks the merged set, assigns density and keeps `n` members front by front;
// the last admitted front is cut by descending density.
auto nsga2_survival(Population merged, std::size_t n, SelectionHook& hook, Rng& rng) -> Population;

// Binary tournament on (rank ascending, density descending).
auto nsga2_tournament(Population const& pop, Rng& rng) -> std::size_t;

class Nsga2 final : public Engine {
public:
    Nsga2(EngineParams params, Evaluator const& evaluator, Variation& variation, SelectionHook& hook);

    void initialize(Rng& rng) override;
    void step(Rng& rng) override;

    [[nodiscard]] auto population() const -> Population const& override { return pop_; }
    [[nodiscard]] auto reporting_set() const -> Population const& override { return pop_; }

    void set_population(Population pop) { pop_ = std::move(pop); }

private:
    EngineParams params_;
    Evaluator const* evaluator_;
    Variation* variation_;
    SelectionHook* hook_;
    Population pop_;
};

// ---- SPEA2 --------------------------------------------------------------

// Environmental selection over population + archive; returns the next archive
// with fitness filled in.
auto spea2_selection(Population merged, std::size_t archive_size, SelectionHook& hook, Rng& rng) -> Population;

class Spea2 final : public Engine {
public:
    Spea2(EngineParams params, Evaluator const& evaluator, Variation& variation, SelectionHook& hook);

    void initialize(Rng& rng) override;
    void step(Rng& rng) override;

    [[nodiscard]] auto population() const -> Population const& override { return pop_; }
    [[nodiscard]] auto reporting_set() const -> Population const& override { return archive_; }
    [[nodiscard]] auto archive() const -> Population const& { return archive_; }

private:
    EngineParams params_;
    Evaluator const* evaluator_;
    Variation* variation_;
    SelectionHook* hook_;
    Population pop_;
    Population archive_;
};

// ---- MOEA/D -------------------------------------------------------------

struct MoeadState {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<std::size_t>> neighborhoods;
    Population population; // one member per weight vector
    ObjectiveVector ideal;
    Population archive; // non-dominated on the base objectives, one member per distinct vector
};

// Lowers the ideal point componentwise towards f.
void update_ideal(ObjectiveVector& ideal, ObjectiveVector const& f);

// Replaces members of `pool` (visited in random order) whose Tchebycheff value
// is strictly worse than the child's, at most `max_replacements` times.
auto moead_replace(MoeadState& state, Individual const& child, std::span<std::size_t const> pool,
    std::size_t max_replacements, Rng& rng) -> std::size_t;

// Inserts into the external archive under base-objective dominance.
void moead_archive_insert(Population& archive, Individual const& candidate);

class Moead final : public Engine {
public:
    Moead(EngineParams params, Evaluator const& evaluator, Variation& variation, SelectionHook& hook);

    void initialize(Rng& rng) override;
    void step(Rng& rng) override;

    [[nodiscard]] auto population() const -> Population const& override { return state_.population; }
    [[nodiscard]] auto reporting_set() const -> Population const& override { return state_.archive; }
    [[nodiscard]] auto state() const -> MoeadState const& { return state_; }

private:
    EngineParams params_;
    Evaluator const* evaluator_;
    Variation* variation_;
    SelectionHook* hook_;
    MoeadState state_;
};

enum class EngineKind { Nsga2, Spea2, Moead };

auto make_engine(EngineKind kind, EngineParams const& params, Evaluator const& evaluator, Variation& variation,
    SelectionHook& hook) -> std::unique_ptr<Engine>;

// Initial population, evaluated.
auto initial_population(std::size_t n, EngineParams const& params, PrimitiveSet const& primitives,
    Evaluator const& evaluator, Rng& rng) -> Population;

} // namespace semgp

#endif
