#ifndef SEMGP_OBJECTIVES_HPP
#define SEMGP_OBJECTIVES_HPP

#include <span>
#include <vector>

#include "semgp/common.hpp"
#include "semgp/dataset.hpp"

namespace semgp {

inline constexpr double kDefaultThreshold = 0.0;

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;

    [[nodiscard]] auto tpr() const -> double { return static_cast<double>(tp) / static_cast<double>(tp + fn); }
    [[nodiscard]] auto tnr() const -> double { return static_cast<double>(tn) / static_cast<double>(tn + fp); }

    auto operator==(ConfusionCounts const&) const -> bool = default;
};

// Case i is positive iff sem[i] >= threshold.
auto classify(std::span<double const> sem, double threshold = kDefaultThreshold) -> std::vector<Label>;

auto confusion(std::span<Label const> predictions, std::span<Label const> labels) -> ConfusionCounts;

// (1 - TPR, 1 - TNR): both objectives are minimized.
auto objective_vector(ConfusionCounts const& c) -> ObjectiveVector;

// Convenience: semantics -> predictions -> counts -> objectives.
auto classification_objectives(std::span<double const> sem, Dataset const& ds,
    double threshold = kDefaultThreshold) -> ObjectiveVector;

} // namespace semgp

#endif
