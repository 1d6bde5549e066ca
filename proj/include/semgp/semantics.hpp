#ifndef SEMGP_SEMANTICS_HPP
#define SEMGP_SEMANTICS_HPP

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "semgp/common.hpp"

namespace semgp {

// Lower/upper bounds on semantic similarity. ubss may be +infinity.
struct SimilarityBounds {
    double lbss = 0.0;
    double ubss = std::numeric_limits<double>::infinity();

    void validate() const;
    [[nodiscard]] auto contains(double d) const -> bool { return lbss <= d && d <= ubss; }
};

// Mean absolute difference over `subset` (all cases when empty/absent).
auto ssc_distance(std::span<double const> a, std::span<double const> b,
    std::optional<std::span<std::size_t const>> subset = std::nullopt) -> double;

// Number of cases whose absolute difference exceeds ubss.
auto distance_above_ubss(std::span<double const> p, std::span<double const> v, SimilarityBounds const& b)
    -> std::size_t;

// Number of cases whose absolute difference lies in [lbss, ubss].
auto distance_in_band(std::span<double const> p, std::span<double const> v, SimilarityBounds const& b)
    -> std::size_t;

enum class DistanceRule { AboveUpper, Band };

auto semantic_distance(std::span<double const> p, std::span<double const> v, SimilarityBounds const& b,
    DistanceRule rule) -> std::size_t;

struct Pivot {
    Semantics semantics;
    std::size_t index = 0; // position within the front it was drawn from
};

// Picks the member with the largest finite crowding value (lowest index on
// ties). When no value is finite a member is drawn uniformly at random.
auto select_pivot_index(std::span<double const> crowding, Rng& rng) -> std::size_t;

auto select_pivot(std::span<Semantics const> front_semantics, std::span<double const> crowding, Rng& rng) -> Pivot;

} // namespace semgp

#endif
