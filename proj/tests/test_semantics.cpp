#include <doctest.h>

#include <cmath>
#include <limits>

#include "semgp/semantics.hpp"

using namespace semgp;

namespace {

auto random_vector(Rng& rng, std::size_t n) -> Semantics
{
    Semantics s(n);
    for (auto& v : s) {
        v = uniform01(rng) * 2.0 - 1.0;
    }
    return s;
}

auto below_lbss(Semantics const& p, Semantics const& v, double lbss) -> std::size_t
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        count += std::abs(p[i] - v[i]) < lbss ? 1 : 0;
    }
    return count;
}

} // namespace

TEST_CASE("mean absolute distance")
{
    Semantics const a { 0.0, 0.0 };
    CHECK(ssc_distance(a, a) == 0.0);
    CHECK(ssc_distance(a, Semantics { 1.0, 3.0 }) == 2.0);
    std::vector<std::size_t> const subset { 0 };
    CHECK(ssc_distance(Semantics { 0, 0, 0 }, Semantics { 3, 0, 0 }, subset) == 3.0);
    CHECK_THROWS_AS(ssc_distance(a, Semantics { 1.0 }), Error);
}

TEST_CASE("count above the upper bound")
{
    Semantics const p { 0.9, 0.2, 0.5 };
    Semantics const v { 0.1, 0.25, 0.5 };
    CHECK(distance_above_ubss(p, p, { 0.0, 0.5 }) == 0);
    CHECK(distance_above_ubss(p, v, { 0.0, 0.5 }) == 1);
    CHECK(distance_above_ubss(p, Semantics { 1, 1, 1 }, { 0.0, 0.0 }) == 3);
}

TEST_CASE("count inside the band")
{
    Semantics const p { 0.9, 0.2, 0.5 };
    Semantics const v { 0.1, 0.25, 0.5 };
    CHECK(distance_in_band(p, v, { 0.01, 0.5 }) == 1);
    CHECK(distance_in_band(p, v, { 0.0, 0.5 }) == 2);
    CHECK(distance_in_band(p, p, { 0.01, 0.5 }) == 0);
    CHECK(semantic_distance(p, v, { 0.01, 0.5 }, DistanceRule::AboveUpper) == 1);
    CHECK(semantic_distance(p, v, { 0.01, 0.5 }, DistanceRule::Band) == 1);
}

TEST_CASE("bounds validation")
{
    CHECK_NOTHROW(SimilarityBounds { 0.0, std::numeric_limits<double>::infinity() }.validate());
    CHECK_THROWS_AS((SimilarityBounds { 0.6, 0.5 }.validate()), Error);
    CHECK_THROWS_AS((SimilarityBounds { -0.1, 0.5 }.validate()), Error);
    CHECK_THROWS_AS((SimilarityBounds { std::nan(""), 0.5 }.validate()), Error);
}

TEST_CASE("above + band + below always covers every case")
{
    Rng rng(31);
    for (int trial = 0; trial < 10000; ++trial) {
        auto const n = 1 + uniform_index(rng, 40);
        auto const p = random_vector(rng, n);
        auto v = random_vector(rng, n);
        if (trial % 5 == 0) {
            v[0] = p[0]; // exercise zero differences
        }
        auto lo = uniform01(rng);
        auto hi = uniform01(rng);
        if (lo > hi) {
            std::swap(lo, hi);
        }
        SimilarityBounds const b { lo, hi };
        CHECK(distance_above_ubss(p, v, b) + distance_in_band(p, v, b) + below_lbss(p, v, lo) == n);
    }
}

TEST_CASE("distance properties")
{
    Rng rng(32);
    for (int trial = 0; trial < 1000; ++trial) {
        auto const n = 1 + uniform_index(rng, 20);
        auto const a = random_vector(rng, n);
        auto const b = random_vector(rng, n);
        auto const c = random_vector(rng, n);
        CHECK(ssc_distance(a, b) == ssc_distance(b, a));
        CHECK(ssc_distance(a, c) <= ssc_distance(a, b) + ssc_distance(b, c) + 1e-12);

        // widening the upper bound never raises the eq1 count and never lowers the eq2 count
        auto const lo = 0.1 * uniform01(rng);
        auto const u1 = lo + uniform01(rng);
        auto const u2 = u1 + uniform01(rng);
        CHECK(distance_above_ubss(a, b, { lo, u2 }) <= distance_above_ubss(a, b, { lo, u1 }));
        CHECK(distance_in_band(a, b, { lo, u2 }) >= distance_in_band(a, b, { lo, u1 }));
    }
}

TEST_CASE("pivot choice")
{
    auto const inf = std::numeric_limits<double>::infinity();
    Rng rng(33);
    CHECK(select_pivot_index(std::vector { inf, 2.0, 0.5, inf }, rng) == 1);
    CHECK(select_pivot_index(std::vector { inf, 1.0, 1.0, inf }, rng) == 1);
    CHECK(select_pivot_index(std::vector { inf }, rng) == 0);

    std::vector<std::size_t> seen(3, 0);
    for (int i = 0; i < 300; ++i) {
        ++seen[select_pivot_index(std::vector { inf, inf, inf }, rng)];
    }
    CHECK(seen[0] > 0);
    CHECK(seen[1] > 0);
    CHECK(seen[2] > 0);

    std::vector<Semantics> const front { { 1.0 }, { 2.0 }, { 3.0 } };
    auto const pivot = select_pivot(front, std::vector { inf, 0.7, inf }, rng);
    CHECK(pivot.index == 1);
    CHECK(pivot.semantics == Semantics { 2.0 });
}
