#include <doctest.h>

#include <cmath>

#include "semgp/metrics.hpp"
#include "support.hpp"

using namespace semgp;

namespace {

auto sized(std::string const& text, ObjectiveVector objectives) -> Individual
{
    Individual ind;
    ind.tree = Program::parse(text);
    ind.objectives = std::move(objectives);
    return ind;
}

} // namespace

TEST_CASE("hypervolume hand values")
{
    std::array<double, 2> const unit { 1.0, 1.0 };
    CHECK(hypervolume_2d(std::vector<ObjectiveVector> { { 0.5, 0.5 } }, unit) == 0.25);
    CHECK(hypervolume_2d(std::vector<ObjectiveVector> { { 0.2, 0.8 }, { 0.6, 0.4 } }, unit) == doctest::Approx(0.32).epsilon(1e-15));
    CHECK(hypervolume_2d(std::vector<ObjectiveVector> {}, unit) == 0.0);
    CHECK(hypervolume_2d(std::vector<ObjectiveVector> { { 1.5, 0.0 } }, unit) == 0.0);
    CHECK(hypervolume_2d(std::vector<ObjectiveVector> { { 0.0, 0.0 } }) == doctest::Approx(1.01 * 1.01));
}

TEST_CASE("dominated points and duplicates add nothing")
{
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        auto pts = testing::random_points(rng, 1 + uniform_index(rng, 15), 2);
        auto const base = hypervolume_2d(pts);
        auto const& p = pts[uniform_index(rng, pts.size())];
        auto noisy = pts;
        noisy.push_back({ p[0] + uniform01(rng) * 0.1, p[1] + uniform01(rng) * 0.1 });
        noisy.push_back(p);
        CHECK(hypervolume_2d(noisy) == doctest::Approx(base).epsilon(1e-14));
    }
}

TEST_CASE("hypervolume against sampling")
{
    Rng rng(62);
    for (int trial = 0; trial < 5; ++trial) {
        auto const pts = testing::random_points(rng, 1 + uniform_index(rng, 10), 2);
        auto const mc = testing::monte_carlo_hypervolume(pts, 1.01, 1.01, 200000, rng);
        CHECK(std::abs(hypervolume_2d(pts) - mc) < 0.01);
    }
}

TEST_CASE("unique solutions")
{
    CHECK(unique_solutions(std::vector<ObjectiveVector>(4, { 0.1, 0.1 })) == 1);
    std::vector<ObjectiveVector> distinct;
    for (int i = 0; i < 7; ++i) {
        distinct.push_back({ i * 0.1, 1.0 - i * 0.1 });
    }
    CHECK(unique_solutions(distinct) == 7);
    CHECK(unique_solutions(std::vector<ObjectiveVector> { { 0.1, 0.2 }, { 0.1, 0.2 }, { 0.3, 0.1 } }) == 2);
}

TEST_CASE("size statistics")
{
    auto const ones = size_stats(std::vector<std::size_t> { 1, 1, 1 });
    CHECK(ones.mean == 1.0);
    CHECK(ones.median == 1.0);
    CHECK(ones.max == 1);
    auto const s = size_stats(std::vector<std::size_t> { 15, 3, 5 });
    CHECK(s.mean == doctest::Approx(23.0 / 3.0));
    CHECK(s.median == 5.0);
    CHECK(s.max == 15);
    auto const one = size_stats(std::vector<std::size_t> { 9 });
    CHECK(one.mean == 9.0);
    CHECK(one.median == 9.0);
    CHECK(one.max == 9);
    CHECK(size_stats(std::vector<std::size_t> { 1, 3 }).median == 2.0);

    Population pop { sized("x0", { 0, 0 }), sized("(+ x0 x1)", { 0, 0 }) };
    CHECK(size_stats(pop).mean == 2.0);
}

TEST_CASE("reported front strips extra objectives and keeps duplicates")
{
    Population pop {
        sized("x0", { 0.1, 0.5, -0.9 }),
        sized("x1", { 0.1, 0.5, -0.1 }),
        sized("x0", { 0.2, 0.6, -1.0 }), // dominated on the base pair
        sized("x0", { 0.5, 0.0, 0.0 }),
    };
    auto const front = reported_front(pop);
    REQUIRE(front.size() == 3);
    for (auto const& m : front) {
        CHECK(m.objectives.size() == 2);
    }
    auto const stats = generation_stats(4, pop, front);
    CHECK(stats.generation == 4);
    CHECK(stats.front_size == 3);
    CHECK(stats.unique_count == 2);
    CHECK(stats.mean_nodes == 1.0);
    CHECK(stats.hypervolume == doctest::Approx(hypervolume_2d(std::vector<ObjectiveVector> { { 0.1, 0.5 }, { 0.5, 0.0 } })));
}
