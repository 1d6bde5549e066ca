#include "semgp/gp.hpp"

#include <algorithm>
#include <cmath>

namespace semgp {

namespace {

auto clamp_value(double v) -> double
{
    return std::clamp(v, -kMagnitudeCap, kMagnitudeCap);
}

void build(PrimitiveSet const& ps, std::size_t remaining, bool full, bool force_function, Rng& rng,
    std::vector<Node>& out)
{
    bool function = false;
    if (remaining > 0) {
        if (full || force_function) {
            function = true;
        } else {
            auto const nf = ps.functions.size();
            function = uniform_index(rng, nf + ps.terminal_count()) < nf;
        }
    }
    if (!function) {
        out.push_back(random_terminal(ps, rng));
        return;
    }
    out.push_back(Node::function(ps.functions[uniform_index(rng, ps.functions.size())]));
    build(ps, remaining - 1, full, false, rng, out);
    build(ps, remaining - 1, full, false, rng, out);
}

// Evaluates the subtree starting at i into `out`; returns the index past it.
auto eval(std::span<Node const> nodes, std::size_t i, Dataset const& ds, std::vector<double>& out) -> std::size_t
{
    auto const n = ds.size();
    auto const& node = nodes[i];
    switch (node.op) {
    case Op::Feature: {
        auto col = ds.column(node.feature);
        out.assign(col.begin(), col.end());
        return i + 1;
    }
    case Op::Constant:
        out.assign(n, node.value);
        return i + 1;
    default:
        break;
    }

    auto next = eval(nodes, i + 1, ds, out);
    std::vector<double> rhs;
    next = eval(nodes, next, ds, rhs);
    switch (node.op) {
    case Op::Add:
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = clamp_value(out[k] + rhs[k]);
        }
        break;
    case Op::Sub:
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = clamp_value(out[k] - rhs[k]);
        }
        break;
    case Op::Mul:
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = clamp_value(out[k] * rhs[k]);
        }
        break;
    case Op::Div:
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = std::abs(rhs[k]) < kDivisionGuard ? kProtectedQuotient : clamp_value(out[k] / rhs[k]);
        }
        break;
    default:
        break;
    }
    return next;
}

} // namespace

void PrimitiveSet::validate() const
{
    if (functions.empty()) {
        throw Error("primitive set has no functions");
    }
    if (terminal_count() == 0) {
        throw Error("primitive set has no terminals");
    }
    for (auto op : functions) {
        if (op >= Op::Feature) {
            throw Error("primitive set lists a terminal as a function");
        }
    }
    if (use_constants && !(constant_low <= constant_high)) {
        throw Error("constant range is empty");
    }
}

auto random_terminal(PrimitiveSet const& ps, Rng& rng) -> Node
{
    auto const pick = uniform_index(rng, ps.terminal_count());
    if (pick < ps.n_features) {
        return Node::variable(static_cast<std::uint32_t>(pick));
    }
    return Node::constant(std::uniform_real_distribution<double>(ps.constant_low, ps.constant_high)(rng));
}

auto generate_full(PrimitiveSet const& ps, std::size_t depth, Rng& rng) -> Program
{
    std::vector<Node> nodes;
    build(ps, depth, true, true, rng, nodes);
    return Program(std::move(nodes));
}

auto generate_grow(PrimitiveSet const& ps, std::size_t depth, Rng& rng, bool function_root) -> Program
{
    std::vector<Node> nodes;
    build(ps, depth, false, function_root, rng, nodes);
    return Program(std::move(nodes));
}

auto ramped_half_and_half(std::size_t pop_size, std::size_t min_depth, std::size_t max_depth,
    PrimitiveSet const& ps, Rng& rng) -> std::vector<Program>
{
    ps.validate();
    if (pop_size < 2) {
        throw Error("population size must be at least 2");
    }
    if (min_depth < 1 || min_depth > max_depth) {
        throw Error("initial depths must satisfy 1 <= min_depth <= max_depth");
    }
    auto const span = max_depth - min_depth + 1;
    std::vector<Program> pop;
    pop.reserve(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
        auto const depth = min_depth + i % span;
        auto const full = (i / span) % 2 == 0;
        pop.push_back(full ? generate_full(ps, depth, rng) : generate_grow(ps, depth, rng));
    }
    return pop;
}

auto evaluate_semantics(Program const& p, Dataset const& ds) -> Semantics
{
    return evaluate_subtree(p, 0, ds);
}

auto evaluate_subtree(Program const& p, std::size_t i, Dataset const& ds) -> Semantics
{
    for (auto const& n : p.nodes()) {
        if (n.op == Op::Feature && n.feature >= ds.n_features()) {
            throw Error("program references feature x" + std::to_string(n.feature) + " but the dataset has "
                + std::to_string(ds.n_features()));
        }
    }
    Semantics out;
    eval(p.nodes(), i, ds, out);
    return out;
}

auto pick_crossover_point(Program const& p, double function_bias, Rng& rng) -> std::size_t
{
    std::vector<std::size_t> functions;
    std::vector<std::size_t> terminals;
    for (std::size_t i = 0; i < p.size(); ++i) {
        (p[i].is_function() ? functions : terminals).push_back(i);
    }
    bool const want_function = uniform01(rng) < function_bias;
    auto const& pool = (want_function && !functions.empty()) || terminals.empty() ? functions : terminals;
    return pool[uniform_index(rng, pool.size())];
}

auto select_swap_points(Program const& a, Program const& b, CrossoverParams const& params, Rng& rng)
    -> std::optional<SwapPoints>
{
    auto const level_a = a.levels();
    auto const level_b = b.levels();
    for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
        SwapPoints pts { pick_crossover_point(a, params.function_bias, rng),
            pick_crossover_point(b, params.function_bias, rng) };
        auto const depth_a = a.subtree(pts.first).depth();
        auto const depth_b = b.subtree(pts.second).depth();
        if (level_a[pts.first] + depth_b <= params.max_depth && level_b[pts.second] + depth_a <= params.max_depth) {
            return pts;
        }
    }
    return std::nullopt;
}

auto crossover_at(Program const& a, Program const& b, SwapPoints pts) -> std::pair<Program, Program>
{
    return { a.replace(pts.first, b.subtree(pts.second)), b.replace(pts.second, a.subtree(pts.first)) };
}

auto subtree_crossover(Program const& a, Program const& b, Rng& rng, CrossoverParams const& params)
    -> std::pair<Program, Program>
{
    if (auto pts = select_swap_points(a, b, params, rng)) {
        return crossover_at(a, b, *pts);
    }
    return { a, b };
}

auto subtree_mutation(Program const& p, PrimitiveSet const& ps, Rng& rng, std::size_t max_depth,
    std::size_t subtree_depth) -> Program
{
    auto const levels = p.levels();
    auto const point = uniform_index(rng, p.size());
    auto const room = max_depth > levels[point] ? max_depth - levels[point] : 0;
    auto fresh = generate_grow(ps, std::min(subtree_depth, room), rng, false);
    return p.replace(point, fresh);
}

} // namespace semgp
