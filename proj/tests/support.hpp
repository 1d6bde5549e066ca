#ifndef SEMGP_TESTS_SUPPORT_HPP
#define SEMGP_TESTS_SUPPORT_HPP

// Generators and brute-force oracles shared by the unit and acceptance tests.
// The oracles deliberately avoid the library's own helpers.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "semgp/common.hpp"
#include "semgp/dataset.hpp"
#include "semgp/harness.hpp"
#include "semgp/metrics.hpp"

namespace semgp::testing {

inline auto random_points(Rng& rng, std::size_t n, std::size_t m, int grid = 0) -> std::vector<ObjectiveVector>
{
    // grid > 0 snaps values to a lattice so ties and duplicates show up
    std::vector<ObjectiveVector> pts(n, ObjectiveVector(m));
    std::uniform_int_distribution<int> cell(0, grid > 0 ? grid : 1);
    for (auto& p : pts) {
        for (auto& v : p) {
            v = grid > 0 ? cell(rng) / static_cast<double>(grid) : uniform01(rng);
        }
    }
    return pts;
}

inline auto naive_dominates(ObjectiveVector const& a, ObjectiveVector const& b) -> bool
{
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
        strict = strict || a[i] < b[i];
    }
    return strict;
}

// Repeatedly strips the members that nobody remaining dominates.
inline auto peel_fronts(std::vector<ObjectiveVector> const& pts) -> std::vector<std::vector<std::size_t>>
{
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<bool> gone(pts.size(), false);
    std::size_t left = pts.size();
    while (left > 0) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (gone[i]) {
                continue;
            }
            bool dominated = false;
            for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
                dominated = !gone[j] && naive_dominates(pts[j], pts[i]);
            }
            if (!dominated) {
                front.push_back(i);
            }
        }
        for (auto i : front) {
            gone[i] = true;
        }
        left -= front.size();
        fronts.push_back(std::move(front));
    }
    return fronts;
}

struct NaiveSpea2 {
    std::vector<double> strength;
    std::vector<double> raw;
    std::vector<double> density;
};

inline auto naive_spea2(std::vector<ObjectiveVector> const& pts) -> NaiveSpea2
{
    auto const n = pts.size();
    NaiveSpea2 out { std::vector<double>(n), std::vector<double>(n), std::vector<double>(n) };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.strength[i] += naive_dominates(pts[i], pts[j]) ? 1.0 : 0.0;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.raw[i] += naive_dominates(pts[j], pts[i]) ? out.strength[j] : 0.0;
        }
    }
    std::size_t k = 1;
    while ((k + 1) * (k + 1) <= n) {
        ++k;
    }
    k = std::min(k, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> d;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                double s = 0.0;
                for (std::size_t c = 0; c < pts[i].size(); ++c) {
                    s += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
                }
                d.push_back(std::sqrt(s));
            }
        }
        std::sort(d.begin(), d.end());
        out.density[i] = 1.0 / ((k > 0 ? d[k - 1] : 0.0) + 2.0);
    }
    return out;
}

// Fraction of uniform samples in the reference box dominated by some point.
inline auto monte_carlo_hypervolume(std::vector<ObjectiveVector> const& front, double rx, double ry,
    std::size_t samples, Rng& rng) -> double
{
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        auto const x = uniform01(rng) * rx;
        auto const y = uniform01(rng) * ry;
        for (auto const& p : front) {
            if (p[0] <= x && p[1] <= y) {
                ++hits;
                break;
            }
        }
    }
    return rx * ry * static_cast<double>(hits) / static_cast<double>(samples);
}

// The 200-row 1:9 synthetic set, written once per process to a temp file.
inline auto synthetic_path(std::uint64_t seed = 3) -> std::filesystem::path
{
    auto const path = std::filesystem::temp_directory_path()
        / ("semgp_synth_" + std::to_string(seed) + "_" + std::to_string(::getpid()) + ".csv");
    if (!std::filesystem::exists(path)) {
        write_synthetic(path, 200, 9.0, seed);
    }
    return path;
}

inline auto scratch_dir(std::string const& name) -> std::filesystem::path
{
    auto const dir = std::filesystem::temp_directory_path() / ("semgp_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Reported front of a bare engine driven for the same number of recorded
// generations as run_variant, with no semantic machinery attached.
inline auto raw_engine_front(EngineKind kind, EngineParams const& params, Dataset const& train,
    std::uint64_t seed, std::size_t generations) -> Population
{
    PrimitiveSet ps;
    ps.n_features = train.n_features();
    Evaluator const evaluator(train);
    Variation variation(ps, params);
    SelectionHook hook;
    auto engine = make_engine(kind, params, evaluator, variation, hook);
    Rng rng(seed);
    engine->initialize(rng);
    for (std::size_t g = 1; g < generations; ++g) {
        engine->step(rng);
    }
    return reported_front(engine->reporting_set());
}

} // namespace semgp::testing

#endif
