#ifndef SEMGP_DATASET_HPP
#define SEMGP_DATASET_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semgp/common.hpp"

namespace semgp {

enum class Label : std::uint8_t { Negative = 0, Positive = 1 };

struct FitnessCase {
    std::vector<double> features;
    Label label = Label::Negative;

    auto operator==(FitnessCase const&) const -> bool = default;
};

// Binary classification data. The positive class is the class of interest
// (by default the minority class) and drives TPR.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<FitnessCase> cases, std::string positive_token, std::string negative_token);

    [[nodiscard]] auto cases() const -> std::vector<FitnessCase> const& { return cases_; }
    [[nodiscard]] auto size() const -> std::size_t { return cases_.size(); }
    [[nodiscard]] auto n_features() const -> std::size_t { return n_features_; }
    [[nodiscard]] auto positives() const -> std::size_t { return positives_; }
    [[nodiscard]] auto negatives() const -> std::size_t { return cases_.size() - positives_; }
    [[nodiscard]] auto label(std::size_t i) const -> Label { return cases_[i].label; }
    [[nodiscard]] auto labels() const -> std::vector<Label> const& { return labels_; }

    // Column-major view of feature k across all cases.
    [[nodiscard]] auto column(std::size_t k) const -> std::span<double const> { return columns_[k]; }

    [[nodiscard]] auto positive_token() const -> std::string const& { return positive_token_; }
    [[nodiscard]] auto negative_token() const -> std::string const& { return negative_token_; }

    auto operator==(Dataset const& other) const -> bool
    {
        return cases_ == other.cases_ && positive_token_ == other.positive_token_
            && negative_token_ == other.negative_token_;
    }

private:
    std::vector<FitnessCase> cases_;
    std::vector<std::vector<double>> columns_;
    std::vector<Label> labels_;
    std::string positive_token_;
    std::string negative_token_;
    std::size_t n_features_ = 0;
    std::size_t positives_ = 0;
};

struct CsvOptions {
    // Negative values index from the end; -1 is the last column.
    int label_column = -1;
    // Token mapped to the positive class. When absent the rarer token is used,
    // ties going to the lexicographically smaller token.
    std::optional<std::string> positive_label;
};

auto load_csv(std::filesystem::path const& path, CsvOptions const& options = {}) -> Dataset;

// Splits each class independently so that per-class proportions survive.
// Within each half the original case order is kept.
auto stratified_split(Dataset const& ds, double train_fraction, std::uint64_t seed) -> std::pair<Dataset, Dataset>;

// Per-feature min-max scaling fitted on one dataset and applied to others.
class MinMaxScaler {
public:
    static auto fit(Dataset const& ds) -> MinMaxScaler;
    [[nodiscard]] auto transform(Dataset const& ds) const -> Dataset;

private:
    std::vector<double> low_;
    std::vector<double> range_;
};

} // namespace semgp

#endif
