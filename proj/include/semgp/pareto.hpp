#ifndef SEMGP_PARETO_HPP
#define SEMGP_PARETO_HPP

#include <span>
#include <vector>

#include "semgp/common.hpp"

namespace semgp {

// Ordered fronts of indices; front 0 is non-dominated.
using FrontPartition = std::vector<std::vector<std::size_t>>;

// a <= b everywhere and a < b somewhere (minimization).
auto dominates(std::span<double const> a, std::span<double const> b) -> bool;

// Deb's fast non-dominated sort. Indices within each front are ascending.
auto fast_nondominated_sort(std::span<ObjectiveVector const> points) -> FrontPartition;

// Indices of the mutually non-dominated members (duplicates are kept).
auto nondominated_indices(std::span<ObjectiveVector const> points) -> std::vector<std::size_t>;

// NSGA-II crowding distance: per-objective extremes get +inf, interior
// members sum normalized neighbour gaps; zero-range objectives add nothing.
auto crowding_distance(std::span<ObjectiveVector const> front) -> std::vector<double>;

struct Spea2Fitness {
    std::vector<double> strength;
    std::vector<double> raw;
    std::vector<double> density;
    std::vector<double> fitness;
};

// Fitness over the union (population first, then archive). Lower is better;
// non-dominated members score below 1.
auto spea2_fitness(std::span<ObjectiveVector const> population, std::span<ObjectiveVector const> archive)
    -> Spea2Fitness;

// Same, with an externally supplied density term in place of the k-th
// nearest neighbour estimate.
auto spea2_fitness_with_density(std::span<ObjectiveVector const> points, std::span<double const> density)
    -> Spea2Fitness;

// Removes, one at a time, the member whose ascending nearest-neighbour
// distance list is lexicographically smallest. Returns surviving indices in
// ascending order.
auto spea2_truncate(std::span<ObjectiveVector const> archive, std::size_t target_size) -> std::vector<std::size_t>;

// max_i w_i |f_i - z_i|
auto tchebycheff(std::span<double const> f, std::span<double const> w, std::span<double const> z) -> double;

// Simplex-lattice weights with the smallest H giving at least `min_count`
// vectors.
auto simplex_lattice_weights(std::size_t objectives, std::size_t min_count) -> std::vector<std::vector<double>>;

// The `size` nearest weight vectors to each vector, self first.
auto weight_neighborhoods(std::span<std::vector<double> const> weights, std::size_t size)
    -> std::vector<std::vector<std::size_t>>;

} // namespace semgp

#endif
