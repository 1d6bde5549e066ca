#include "semgp/engine.hpp"

#include <algorithm>
#include <numeric>

#include "semgp/parallel.hpp"

namespace semgp {

namespace {

auto unevaluated(Program tree) -> Individual
{
    Individual ind;
    ind.tree = std::move(tree);
    return ind;
}

} // namespace

auto objectives_of(std::span<Individual const> pop) -> std::vector<ObjectiveVector>
{
    std::vector<ObjectiveVector> out;
    out.reserve(pop.size());
    for (auto const& ind : pop) {
        out.push_back(ind.objectives);
    }
    return out;
}

Evaluator::Evaluator(Dataset const& train, std::size_t workers, double threshold)
    : train_(&train)
    , workers_(workers)
    , threshold_(threshold)
{
}

void Evaluator::evaluate(Individual& ind) const
{
    ind.semantics = evaluate_semantics(ind.tree, *train_);
    ind.objectives = classification_objectives(ind.semantics, *train_, threshold_);
    ind.rank = 0;
    ind.density = 0.0;
    ind.fitness = 0.0;
}

void Evaluator::evaluate(std::span<Individual> pop) const
{
    parallel_for(pop.size(), workers_, [&](std::size_t i) { evaluate(pop[i]); });
}

void EngineParams::validate() const
{
    if (pop_size < 2) {
        throw Error("population size must be at least 2");
    }
    if (min_init_depth < 1 || min_init_depth > max_init_depth || max_init_depth > max_depth) {
        throw Error("depth limits must satisfy 1 <= min_init_depth <= max_init_depth <= max_depth");
    }
    for (double r : { crossover_rate, mutation_rate, function_bias, neighbor_mating_probability }) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw Error("rates and probabilities must lie in [0, 1]");
        }
    }
    if (neighborhood_size < 2) {
        throw Error("MOEA/D neighbourhood size must be at least 2");
    }
    if (max_replacements < 1) {
        throw Error("MOEA/D max replacements must be at least 1");
    }
}

Variation::Variation(PrimitiveSet primitives, EngineParams const& params)
    : primitives_(std::move(primitives))
    , crossover_ { params.max_depth, params.function_bias, 5 }
    , mutation_subtree_depth_(params.mutation_subtree_depth)
    , crossover_rate_(params.crossover_rate)
    , mutation_rate_(params.mutation_rate)
{
    primitives_.validate();
}

auto Variation::crossover(Individual const& a, Individual const& b, Rng& rng) -> std::pair<Program, Program>
{
    return subtree_crossover(a.tree, b.tree, rng, crossover_);
}

auto Variation::mutate(Program const& p, Rng& rng) const -> Program
{
    return subtree_mutation(p, primitives_, rng, crossover_.max_depth, mutation_subtree_depth_);
}

auto Variation::breed(Individual const& a, Individual const& b, Rng& rng) -> std::pair<Program, Program>
{
    auto children = uniform01(rng) < crossover_rate_ ? crossover(a, b, rng) : std::pair { a.tree, b.tree };
    if (uniform01(rng) < mutation_rate_) {
        children.first = mutate(children.first, rng);
    }
    if (uniform01(rng) < mutation_rate_) {
        children.second = mutate(children.second, rng);
    }
    return children;
}

auto initial_population(std::size_t n, EngineParams const& params, PrimitiveSet const& primitives,
    Evaluator const& evaluator, Rng& rng) -> Population
{
    auto programs = ramped_half_and_half(n, params.min_init_depth, params.max_init_depth, primitives, rng);
    Population pop(n);
    for (std::size_t i = 0; i < n; ++i) {
        pop[i].tree = std::move(programs[i]);
    }
    evaluator.evaluate(pop);
    return pop;
}

// ---- NSGA-II ------------------------------------------------------------

auto nsga2_survival(Population merged, std::size_t n, SelectionHook& hook, Rng& rng) -> Population
{
    hook.prepare(merged, rng);
    auto const objs = objectives_of(merged);
    auto const fronts = fast_nondominated_sort(objs);

    std::vector<double> surrogate;
    if (hook.replaces_density()) {
        surrogate = hook.density(merged);
        if (surrogate.size() != merged.size()) {
            throw Error("selection hook returned a density vector of the wrong size");
        }
    }
    for (std::size_t k = 0; k < fronts.size(); ++k) {
        auto const& front = fronts[k];
        std::vector<double> density;
        if (surrogate.empty()) {
            std::vector<ObjectiveVector> fobjs;
            fobjs.reserve(front.size());
            for (auto i : front) {
                fobjs.push_back(objs[i]);
            }
            density = crowding_distance(fobjs);
        }
        for (std::size_t j = 0; j < front.size(); ++j) {
            auto& ind = merged[front[j]];
            ind.rank = k;
            ind.density = surrogate.empty() ? density[j] : surrogate[front[j]];
        }
    }

    Population next;
    next.reserve(n);
    for (auto const& front : fronts) {
        if (next.size() + front.size() <= n) {
            for (auto i : front) {
                next.push_back(std::move(merged[i]));
            }
            if (next.size() == n) {
                break;
            }
            continue;
        }
        auto order = front;
        std::stable_sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return merged[a].density > merged[b].density; });
        for (std::size_t j = 0; next.size() < n; ++j) {
            next.push_back(std::move(merged[order[j]]));
        }
        break;
    }
    return next;
}

auto nsga2_tournament(Population const& pop, Rng& rng) -> std::size_t
{
    auto const a = uniform_index(rng, pop.size());
    auto const b = uniform_index(rng, pop.size());
    auto const& x = pop[a];
    auto const& y = pop[b];
    if (y.rank < x.rank || (y.rank == x.rank && y.density > x.density)) {
        return b;
    }
    return a;
}

Nsga2::Nsga2(EngineParams params, Evaluator const& evaluator, Variation& variation, SelectionHook& hook)
    : params_(params)
    , evaluator_(&evaluator)
    , variation_(&variation)
    , hook_(&hook)
{
    params_.validate();
}

void Nsga2::initialize(Rng& rng)
{
    auto pop = initial_population(params_.pop_size, params_, variation_->primitives(), *evaluator_, rng);
    pop_ = nsga2_survival(std::move(pop), params_.pop_size, *hook_, rng);
}

void Nsga2::step(Rng& rng)
{
    auto const n = params_.pop_size;
    Population offspring;
    offspring.reserve(n);
    while (offspring.size() < n) {
        auto const& a = pop_[nsga2_tournament(pop_, rng)];
        auto const& b = pop_[nsga2_tournament(pop_, rng)];
        auto [c1, c2] = variation_->breed(a, b, rng);
        offspring.push_back(unevaluated(std::move(c1)));
        if (offspring.size() < n) {
            offspring.push_back(unevaluated(std::move(c2)));
        }
    }
    evaluator_->evaluate(offspring);

    Population merged = std::move(pop_);
    merged.insert(merged.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
    pop_ = nsga2_survival(std::move(merged), n, *hook_, rng);
}

// ---- SPEA2 --------------------------------------------------------------

auto spea2_selection(Population merged, std::size_t archive_size, SelectionHook& hook, Rng& rng) -> Population
{
    if (archive_size == 0) {
        throw Error("SPEA2 archive size must be positive");
    }
    hook.prepare(merged, rng);
    auto const objs = objectives_of(merged);

    std::vector<double> surrogate;
    Spea2Fitness fit;
    if (hook.replaces_density()) {
        surrogate = hook.density(merged);
        if (surrogate.size() != merged.size()) {
            throw Error("selection hook returned a density vector of the wrong size");
        }
        std::vector<double> density(surrogate.size());
        for (std::size_t i = 0; i < surrogate.size(); ++i) {
            density[i] = 1.0 / (surrogate[i] + 2.0);
        }
        fit = spea2_fitness_with_density(objs, density);
    } else {
        fit = spea2_fitness(objs, {});
    }
    for (std::size_t i = 0; i < merged.size(); ++i) {
        merged[i].fitness = fit.fitness[i];
        merged[i].density = surrogate.empty() ? fit.density[i] : surrogate[i];
    }

    std::vector<std::size_t> keep;
    std::vector<std::size_t> dominated;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        (fit.raw[i] == 0.0 ? keep : dominated).push_back(i);
    }

    if (keep.size() > archive_size) {
        if (!surrogate.empty()) {
            std::stable_sort(keep.begin(), keep.end(),
                [&](std::size_t a, std::size_t b) { return surrogate[a] > surrogate[b]; });
            keep.resize(archive_size);
            std::sort(keep.begin(), keep.end());
        } else {
            std::vector<ObjectiveVector> nd;
            nd.reserve(keep.size());
            for (auto i : keep) {
                nd.push_back(objs[i]);
            }
            auto const survivors = spea2_truncate(nd, archive_size);
            std::vector<std::size_t> kept;
            kept.reserve(survivors.size());
            for (auto s : survivors) {
                kept.push_back(keep[s]);
            }
            keep = std::move(kept);
        }
    } else if (keep.size() < archive_size) {
        std::stable_sort(dominated.begin(), dominated.end(),
            [&](std::size_t a, std::size_t b) { return fit.fitness[a] < fit.fitness[b]; });
        for (std::size_t j = 0; j < dominated.size() && keep.size() < archive_size; ++j) {
            keep.push_back(dominated[j]);
        }
    }

    Population archive;
    archive.reserve(keep.size());
    for (auto i : keep) {
        archive.push_back(std::move(merged[i]));
    }
    return archive;
}

Spea2::Spea2(EngineParams params, Evaluator const& evaluator, Variation& variation, SelectionHook& hook)
    : params_(params)
    , evaluator_(&evaluator)
    , variation_(&variation)
    , hook_(&hook)
{
    params_.validate();
    if (params_.archive_size == 0) {
        params_.archive_size = params_.pop_size;
    }
}

void Spea2::initialize(Rng& rng)
{
    pop_ = initial_population(params_.pop_size, params_, variation_->primitives(), *evaluator_, rng);
    archive_ = spea2_selection(pop_, params_.archive_size, *hook_, rng);
}

void Spea2::step(Rng& rng)
{
    auto const n = params_.pop_size;
    auto tournament = [&]() -> Individual const& {
        auto const a = uniform_index(rng, archive_.size());
        auto const b = uniform_index(rng, archive_.size());
        return archive_[archive_[b].fitness < archive_[a].fitness ? b : a];
    };
    Population offspring;
    offspring.reserve(n);
    while (offspring.size() < n) {
        auto const& a = tournament();
        auto const& b = tournament();
        auto [c1, c2] = variation_->breed(a, b, rng);
        offspring.push_back(unevaluated(std::move(c1)));
        if (offspring.size() < n) {
            offspring.push_back(unevaluated(std::move(c2)));
        }
    }
    evaluator_->evaluate(offspring);
    pop_ = std::move(offspring);

    Population merged = pop_;
    merged.insert(merged.end(), std::make_move_iterator(archive_.begin()), std::make_move_iterator(archive_.end()));
    archive_ = spea2_selection(std::move(merged), params_.archive_size, *hook_, rng);
}

// ---- MOEA/D -------------------------------------------------------------

void update_ideal(ObjectiveVector& ideal, ObjectiveVector const& f)
{
    if (ideal.empty()) {
        ideal = f;
        return;
    }
    if (ideal.size() != f.size()) {
        throw Error("ideal point dimension mismatch");
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        ideal[i] = std::min(ideal[i], f[i]);
    }
}

auto moead_replace(MoeadState& state, Individual const& child, std::span<std::size_t const> pool,
    std::size_t max_replacements, Rng& rng) -> std::size_t
{
    std::vector<std::size_t> order(pool.begin(), pool.end());
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t replaced = 0;
    for (auto j : order) {
        if (replaced >= max_replacements) {
            break;
        }
        auto const& w = state.weights[j];
        if (tchebycheff(child.objectives, w, state.ideal) < tchebycheff(state.population[j].objectives, w, state.ideal)) {
            state.population[j] = child;
            ++replaced;
        }
    }
    return replaced;
}

void moead_archive_insert(Population& archive, Individual const& candidate)
{
    std::span<double const> const c(candidate.objectives.data(), 2);
    for (auto const& a : archive) {
        std::span<double const> const m(a.objectives.data(), 2);
        if (dominates(m, c) || std::equal(m.begin(), m.end(), c.begin())) {
            return;
        }
    }
    std::erase_if(archive, [&](Individual const& a) { return dominates(c, std::span<double const>(a.objectives.data(), 2)); });
    archive.push_back(candidate);
}

Moead::Moead(EngineParams params, Evaluator const& evaluator, Variation& variation, SelectionHook& hook)
    : params_(params)
    , evaluator_(&evaluator)
    , variation_(&variation)
    , hook_(&hook)
{
    params_.validate();
}

void Moead::initialize(Rng& rng)
{
    auto const m = 2 + hook_->extra_objectives();
    state_ = MoeadState {};
    state_.weights = simplex_lattice_weights(m, params_.pop_size);
    state_.neighborhoods = weight_neighborhoods(state_.weights, params_.neighborhood_size);
    state_.population = initial_population(state_.weights.size(), params_, variation_->primitives(), *evaluator_, rng);
    hook_->prepare(state_.population, rng);
    for (auto const& ind : state_.population) {
        update_ideal(state_.ideal, ind.objectives);
        moead_archive_insert(state_.archive, ind);
    }
}

void Moead::step(Rng& rng)
{
    hook_->prepare(state_.population, rng);
    for (auto const& ind : state_.population) {
        update_ideal(state_.ideal, ind.objectives);
    }

    auto const n = state_.population.size();
    std::vector<std::size_t> everyone(n);
    std::iota(everyone.begin(), everyone.end(), 0);

    for (std::size_t i = 0; i < n; ++i) {
        bool const local = uniform01(rng) < params_.neighbor_mating_probability;
        std::span<std::size_t const> pool = local ? std::span<std::size_t const>(state_.neighborhoods[i]) : everyone;
        auto const k = pool[uniform_index(rng, pool.size())];
        auto l = k;
        if (pool.size() > 1) {
            while (l == k) {
                l = pool[uniform_index(rng, pool.size())];
            }
        }
        auto children = variation_->breed(state_.population[k], state_.population[l], rng);
        auto child = unevaluated(std::move(children.first));
        evaluator_->evaluate(child);
        hook_->extend(child);
        update_ideal(state_.ideal, child.objectives);
        moead_replace(state_, child, pool, params_.max_replacements, rng);
        moead_archive_insert(state_.archive, child);
    }
}

auto make_engine(EngineKind kind, EngineParams const& params, Evaluator const& evaluator, Variation& variation,
    SelectionHook& hook) -> std::unique_ptr<Engine>
{
    switch (kind) {
    case EngineKind::Nsga2: return std::make_unique<Nsga2>(params, evaluator, variation, hook);
    case EngineKind::Spea2: return std::make_unique<Spea2>(params, evaluator, variation, hook);
    case EngineKind::Moead: return std::make_unique<Moead>(params, evaluator, variation, hook);
    }
    throw Error("unknown engine");
}

} // namespace semgp
