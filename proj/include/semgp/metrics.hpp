#ifndef SEMGP_METRICS_HPP
#define SEMGP_METRICS_HPP

#include <array>
#include <span>
#include <vector>

#include "semgp/common.hpp"
#include "semgp/engine.hpp"

namespace semgp {

// Reference point in (1 - TPR, 1 - TNR) space.
inline constexpr std::array<double, 2> kReferencePoint { 1.01, 1.01 };

struct GenerationStats {
    std::size_t generation = 0;
    double hypervolume = 0.0;
    std::size_t unique_count = 0;
    double mean_nodes = 0.0;
    std::size_t front_size = 0;

    auto operator==(GenerationStats const&) const -> bool = default;
};

// Exact area dominated by the points (minimization) and bounded by `ref`.
// Points outside the reference box and dominated points are ignored.
auto hypervolume_2d(std::span<ObjectiveVector const> front, std::array<double, 2> ref = kReferencePoint) -> double;

// Distinct vectors under exact equality.
auto unique_solutions(std::span<ObjectiveVector const> front) -> std::size_t;

struct SizeStats {
    double mean = 0.0;
    double median = 0.0;
    std::size_t max = 0;
};

auto size_stats(std::span<std::size_t const> node_counts) -> SizeStats;
auto size_stats(Population const& pop) -> SizeStats;

// Copies of the members whose base objectives are mutually non-dominated,
// with objectives cut down to the base pair. Duplicates are kept.
auto reported_front(Population const& members) -> Population;

enum class UniqueBy { Objectives, Semantics };

auto generation_stats(std::size_t generation, Population const& population, Population const& front,
    UniqueBy unique_by = UniqueBy::Objectives) -> GenerationStats;

} // namespace semgp

#endif
