#include "semgp/metrics.hpp"

#include <algorithm>
#include <set>

#include "semgp/pareto.hpp"

namespace semgp {

auto hypervolume_2d(std::span<ObjectiveVector const> front, std::array<double, 2> ref) -> double
{
    std::vector<std::array<double, 2>> pts;
    pts.reserve(front.size());
    for (auto const& p : front) {
        if (p.size() < 2) {
            throw Error("hypervolume_2d needs two objectives per point");
        }
        if (p[0] <= ref[0] && p[1] <= ref[1]) {
            pts.push_back({ p[0], p[1] });
        }
    }
    // ascending f1, ties by ascending f2 so the best of equal-f1 points comes first
    std::sort(pts.begin(), pts.end());

    double volume = 0.0;
    double best_f2 = ref[1];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i][1] >= best_f2) {
            continue; // dominated or weakly dominated by an earlier point
        }
        // width extends to the next point that improves f2, or to ref1
        double next_f1 = ref[0];
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[j][1] < pts[i][1]) {
                next_f1 = pts[j][0];
                break;
            }
        }
        volume += (next_f1 - pts[i][0]) * (ref[1] - pts[i][1]);
        best_f2 = pts[i][1];
    }
    return volume;
}

auto unique_solutions(std::span<ObjectiveVector const> front) -> std::size_t
{
    std::set<ObjectiveVector> seen(front.begin(), front.end());
    return seen.size();
}

auto size_stats(std::span<std::size_t const> node_counts) -> SizeStats
{
    if (node_counts.empty()) {
        throw Error("size statistics of an empty population");
    }
    std::vector<std::size_t> sorted(node_counts.begin(), node_counts.end());
    std::sort(sorted.begin(), sorted.end());
    SizeStats s;
    double sum = 0.0;
    for (auto c : sorted) {
        sum += static_cast<double>(c);
    }
    auto const n = sorted.size();
    s.mean = sum / static_cast<double>(n);
    s.median = n % 2 == 1 ? static_cast<double>(sorted[n / 2])
                          : (static_cast<double>(sorted[n / 2 - 1]) + static_cast<double>(sorted[n / 2])) / 2.0;
    s.max = sorted.back();
    return s;
}

auto size_stats(Population const& pop) -> SizeStats
{
    std::vector<std::size_t> counts;
    counts.reserve(pop.size());
    for (auto const& ind : pop) {
        counts.push_back(node_count(ind.tree));
    }
    return size_stats(counts);
}

auto reported_front(Population const& members) -> Population
{
    std::vector<ObjectiveVector> base;
    base.reserve(members.size());
    for (auto const& m : members) {
        base.emplace_back(m.objectives.begin(), m.objectives.begin() + 2);
    }
    Population front;
    for (auto i : nondominated_indices(base)) {
        auto ind = members[i];
        ind.objectives = base[i];
        front.push_back(std::move(ind));
    }
    return front;
}

auto generation_stats(std::size_t generation, Population const& population, Population const& front,
    UniqueBy unique_by) -> GenerationStats
{
    GenerationStats g;
    g.generation = generation;
    auto const objs = objectives_of(front);
    g.hypervolume = hypervolume_2d(objs);
    if (unique_by == UniqueBy::Objectives) {
        g.unique_count = unique_solutions(objs);
    } else {
        std::vector<Semantics> sems;
        sems.reserve(front.size());
        for (auto const& m : front) {
            sems.push_back(m.semantics);
        }
        g.unique_count = unique_solutions(sems);
    }
    g.mean_nodes = population.empty() ? 0.0 : size_stats(population).mean;
    g.front_size = front.size();
    return g;
}

} // namespace semgp
