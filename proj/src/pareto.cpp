#include "semgp/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace semgp {

namespace {

auto euclidean(std::span<double const> a, std::span<double const> b) -> double
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto const d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

auto distance_matrix(std::span<ObjectiveVector const> points) -> std::vector<std::vector<double>>
{
    auto const n = points.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d[i][j] = d[j][i] = euclidean(points[i], points[j]);
        }
    }
    return d;
}

auto dominance_components(std::span<ObjectiveVector const> points) -> std::pair<std::vector<double>, std::vector<double>>
{
    auto const n = points.size();
    std::vector<double> strength(n, 0.0);
    std::vector<std::vector<std::size_t>> dominated_by(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dominates(points[i], points[j])) {
                strength[i] += 1.0;
                dominated_by[j].push_back(i);
            }
        }
    }
    std::vector<double> raw(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (auto i : dominated_by[j]) {
            raw[j] += strength[i];
        }
    }
    return { std::move(strength), std::move(raw) };
}

void compositions(std::size_t parts, std::size_t total, std::vector<std::size_t>& current,
    std::vector<std::vector<double>>& out, std::size_t h)
{
    if (parts == 1) {
        current.push_back(total);
        std::vector<double> w;
        w.reserve(current.size());
        for (auto c : current) {
            w.push_back(static_cast<double>(c) / static_cast<double>(h));
        }
        out.push_back(std::move(w));
        current.pop_back();
        return;
    }
    for (std::size_t c = 0; c <= total; ++c) {
        current.push_back(c);
        compositions(parts - 1, total - c, current, out, h);
        current.pop_back();
    }
}

auto binomial(std::size_t n, std::size_t k) -> std::size_t
{
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace

auto dominates(std::span<double const> a, std::span<double const> b) -> bool
{
    if (a.size() != b.size()) {
        throw Error("dominance check on vectors of different length");
    }
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
        strictly = strictly || a[i] < b[i];
    }
    return strictly;
}

auto fast_nondominated_sort(std::span<ObjectiveVector const> points) -> FrontPartition
{
    auto const n = points.size();
    if (n > 0) {
        auto const m = points.front().size();
        for (auto const& p : points) {
            if (p.empty() || p.size() != m) {
                throw Error("non-dominated sort: missing or inconsistent objective vectors");
            }
        }
    }
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> counter(n, 0);
    FrontPartition fronts(1);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(points[p], points[q])) {
                dominated[p].push_back(q);
                ++counter[q];
            } else if (dominates(points[q], points[p])) {
                dominated[q].push_back(p);
                ++counter[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (counter[p] == 0) {
            fronts[0].push_back(p);
        }
    }
    std::size_t k = 0;
    while (!fronts[k].empty()) {
        std::vector<std::size_t> next;
        for (auto p : fronts[k]) {
            for (auto q : dominated[p]) {
                if (--counter[q] == 0) {
                    next.push_back(q);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
        ++k;
    }
    fronts.pop_back();
    return fronts;
}

auto nondominated_indices(std::span<ObjectiveVector const> points) -> std::vector<std::size_t>
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            dominated = j != i && dominates(points[j], points[i]);
        }
        if (!dominated) {
            out.push_back(i);
        }
    }
    return out;
}

auto crowding_distance(std::span<ObjectiveVector const> front) -> std::vector<double>
{
    auto const n = front.size();
    constexpr auto inf = std::numeric_limits<double>::infinity();
    std::vector<double> distance(n, 0.0);
    if (n == 0) {
        return distance;
    }
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), inf);
        return distance;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < front.front().size(); ++m) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        auto const range = front[order.back()][m] - front[order.front()][m];
        if (range <= 0.0) {
            continue;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            distance[order[i]] += (front[order[i + 1]][m] - front[order[i - 1]][m]) / range;
        }
    }
    return distance;
}

auto spea2_fitness(std::span<ObjectiveVector const> population, std::span<ObjectiveVector const> archive)
    -> Spea2Fitness
{
    std::vector<ObjectiveVector> points(population.begin(), population.end());
    points.insert(points.end(), archive.begin(), archive.end());
    auto const n = points.size();

    std::vector<double> density(n, 0.0);
    if (n > 0) {
        auto const dist = distance_matrix(points);
        auto k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
        k = std::min(k, n - 1);
        std::vector<double> row;
        for (std::size_t i = 0; i < n; ++i) {
            double sigma = 0.0;
            if (k > 0) {
                row.clear();
                for (std::size_t j = 0; j < n; ++j) {
                    if (j != i) {
                        row.push_back(dist[i][j]);
                    }
                }
                std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k - 1), row.end());
                sigma = row[k - 1];
            }
            density[i] = 1.0 / (sigma + 2.0);
        }
    }
    return spea2_fitness_with_density(points, density);
}

auto spea2_fitness_with_density(std::span<ObjectiveVector const> points, std::span<double const> density)
    -> Spea2Fitness
{
    if (points.size() != density.size()) {
        throw Error("spea2 fitness: density size mismatch");
    }
    auto [strength, raw] = dominance_components(points);
    Spea2Fitness out;
    out.fitness.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        out.fitness[i] = raw[i] + density[i];
    }
    out.strength = std::move(strength);
    out.raw = std::move(raw);
    out.density.assign(density.begin(), density.end());
    return out;
}

auto spea2_truncate(std::span<ObjectiveVector const> archive, std::size_t target_size) -> std::vector<std::size_t>
{
    if (target_size == 0) {
        throw Error("spea2 truncation to an empty archive");
    }
    auto const dist = distance_matrix(archive);
    std::vector<std::size_t> alive(archive.size());
    std::iota(alive.begin(), alive.end(), 0);

    while (alive.size() > target_size) {
        std::vector<std::vector<double>> lists(alive.size());
        for (std::size_t a = 0; a < alive.size(); ++a) {
            lists[a].reserve(alive.size() - 1);
            for (std::size_t b = 0; b < alive.size(); ++b) {
                if (a != b) {
                    lists[a].push_back(dist[alive[a]][alive[b]]);
                }
            }
            std::sort(lists[a].begin(), lists[a].end());
        }
        std::size_t victim = 0;
        for (std::size_t a = 1; a < alive.size(); ++a) {
            if (lists[a] < lists[victim]) {
                victim = a;
            }
        }
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    return alive;
}

auto tchebycheff(std::span<double const> f, std::span<double const> w, std::span<double const> z) -> double
{
    if (f.size() != w.size() || f.size() != z.size()) {
        throw Error("tchebycheff: vector lengths differ");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (w[i] < 0.0) {
            throw Error("tchebycheff: negative weight");
        }
        worst = std::max(worst, w[i] * std::abs(f[i] - z[i]));
    }
    return worst;
}

auto simplex_lattice_weights(std::size_t objectives, std::size_t min_count) -> std::vector<std::vector<double>>
{
    if (objectives < 2) {
        throw Error("weight lattice needs at least two objectives");
    }
    std::size_t h = 1;
    while (binomial(h + objectives - 1, objectives - 1) < min_count) {
        ++h;
    }
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> current;
    compositions(objectives, h, current, out, h);
    return out;
}

auto weight_neighborhoods(std::span<std::vector<double> const> weights, std::size_t size)
    -> std::vector<std::vector<std::size_t>>
{
    auto const n = weights.size();
    size = std::min(size, n);
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::size_t> order(n);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            d[j] = euclidean(weights[i], weights[j]);
        }
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
        out[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size));
    }
    return out;
}

} // namespace semgp
