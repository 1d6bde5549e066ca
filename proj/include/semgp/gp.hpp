#ifndef SEMGP_GP_HPP
#define SEMGP_GP_HPP

#include <optional>
#include <utility>
#include <vector>

#include "semgp/common.hpp"
#include "semgp/dataset.hpp"
#include "semgp/program.hpp"

namespace semgp {

// Protected division returns this value when |denominator| < kDivisionGuard.
inline constexpr double kDivisionGuard = 1e-9;
inline constexpr double kProtectedQuotient = 1.0;
// Every intermediate result is clamped to [-kMagnitudeCap, kMagnitudeCap].
inline constexpr double kMagnitudeCap = 1e12;

struct PrimitiveSet {
    std::vector<Op> functions { Op::Add, Op::Sub, Op::Mul, Op::Div };
    std::size_t n_features = 0;
    double constant_low = -1.0;
    double constant_high = 1.0;
    bool use_constants = true;

    [[nodiscard]] auto terminal_count() const -> std::size_t { return n_features + (use_constants ? 1 : 0); }
    void validate() const;
};

auto random_terminal(PrimitiveSet const& ps, Rng& rng) -> Node;

// Full method: every branch reaches exactly `depth`.
auto generate_full(PrimitiveSet const& ps, std::size_t depth, Rng& rng) -> Program;
// Grow method: branches stop early at random. With `function_root` the root
// is forced to be a function whenever depth >= 1.
auto generate_grow(PrimitiveSet const& ps, std::size_t depth, Rng& rng, bool function_root = true) -> Program;

// Tree i gets depth min_depth + i % span and alternates full/grow per ramp.
auto ramped_half_and_half(std::size_t pop_size, std::size_t min_depth, std::size_t max_depth,
    PrimitiveSet const& ps, Rng& rng) -> std::vector<Program>;

auto evaluate_semantics(Program const& p, Dataset const& ds) -> Semantics;
// Semantics of the subtree rooted at node i.
auto evaluate_subtree(Program const& p, std::size_t i, Dataset const& ds) -> Semantics;

struct CrossoverParams {
    std::size_t max_depth = 17;
    double function_bias = 0.9;
    std::size_t max_attempts = 5;
};

struct SwapPoints {
    std::size_t first = 0;
    std::size_t second = 0;
};

// Picks a node, preferring functions with probability `function_bias`.
auto pick_crossover_point(Program const& p, double function_bias, Rng& rng) -> std::size_t;

// Draws swap points until both offspring respect max_depth, giving up after
// max_attempts draws.
auto select_swap_points(Program const& a, Program const& b, CrossoverParams const& params, Rng& rng)
    -> std::optional<SwapPoints>;

// Exchanges the subtrees at the given points.
auto crossover_at(Program const& a, Program const& b, SwapPoints pts) -> std::pair<Program, Program>;

// Parent copies are returned when no depth-valid swap is found.
auto subtree_crossover(Program const& a, Program const& b, Rng& rng, CrossoverParams const& params = {})
    -> std::pair<Program, Program>;

auto subtree_mutation(Program const& p, PrimitiveSet const& ps, Rng& rng, std::size_t max_depth = 17,
    std::size_t subtree_depth = 4) -> Program;

} // namespace semgp

#endif
