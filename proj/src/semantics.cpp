#include "semgp/semantics.hpp"

#include <cmath>

namespace semgp {

namespace {

void require_same_length(std::span<double const> a, std::span<double const> b)
{
    if (a.size() != b.size()) {
        throw Error("semantic vectors differ in length");
    }
}

} // namespace

void SimilarityBounds::validate() const
{
    if (std::isnan(lbss) || std::isnan(ubss) || lbss < 0.0 || ubss < 0.0) {
        throw Error("similarity bounds must be non-negative numbers");
    }
    if (lbss > ubss) {
        throw Error("similarity bounds require lbss <= ubss");
    }
}

auto ssc_distance(std::span<double const> a, std::span<double const> b,
    std::optional<std::span<std::size_t const>> subset) -> double
{
    require_same_length(a, b);
    if (subset) {
        if (subset->empty()) {
            throw Error("ssc distance: empty input subset");
        }
        double sum = 0.0;
        for (auto i : *subset) {
            if (i >= a.size()) {
                throw Error("ssc distance: subset index out of range");
            }
            sum += std::abs(a[i] - b[i]);
        }
        return sum / static_cast<double>(subset->size());
    }
    if (a.empty()) {
        throw Error("ssc distance: empty semantics");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::abs(a[i] - b[i]);
    }
    return sum / static_cast<double>(a.size());
}

auto distance_above_ubss(std::span<double const> p, std::span<double const> v, SimilarityBounds const& b)
    -> std::size_t
{
    require_same_length(p, v);
    std::size_t count = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        count += std::abs(p[i] - v[i]) > b.ubss ? 1 : 0;
    }
    return count;
}

auto distance_in_band(std::span<double const> p, std::span<double const> v, SimilarityBounds const& b)
    -> std::size_t
{
    require_same_length(p, v);
    std::size_t count = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        count += b.contains(std::abs(p[i] - v[i])) ? 1 : 0;
    }
    return count;
}

auto semantic_distance(std::span<double const> p, std::span<double const> v, SimilarityBounds const& b,
    DistanceRule rule) -> std::size_t
{
    return rule == DistanceRule::AboveUpper ? distance_above_ubss(p, v, b) : distance_in_band(p, v, b);
}

auto select_pivot_index(std::span<double const> crowding, Rng& rng) -> std::size_t
{
    if (crowding.empty()) {
        throw Error("pivot selection on an empty front");
    }
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < crowding.size(); ++i) {
        if (std::isfinite(crowding[i]) && (!best || crowding[i] > crowding[*best])) {
            best = i;
        }
    }
    if (best) {
        return *best;
    }
    return crowding.size() == 1 ? 0 : uniform_index(rng, crowding.size());
}

auto select_pivot(std::span<Semantics const> front_semantics, std::span<double const> crowding, Rng& rng) -> Pivot
{
    if (front_semantics.size() != crowding.size()) {
        throw Error("pivot selection: crowding and front sizes differ");
    }
    auto const idx = select_pivot_index(crowding, rng);
    return { front_semantics[idx], idx };
}

} // namespace semgp
