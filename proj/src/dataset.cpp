#include "semgp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace semgp {

namespace {

auto trim(std::string_view s) -> std::string_view
{
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

auto split_row(std::string_view line) -> std::vector<std::string>
{
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        auto const comma = line.find(',', start);
        cells.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

auto parse_real(std::string_view s) -> std::optional<double>
{
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double value = 0.0;
    auto const* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc {} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

} // namespace

Dataset::Dataset(std::vector<FitnessCase> cases, std::string positive_token, std::string negative_token)
    : cases_(std::move(cases))
    , positive_token_(std::move(positive_token))
    , negative_token_(std::move(negative_token))
{
    if (cases_.empty()) {
        throw Error("dataset: no cases");
    }
    n_features_ = cases_.front().features.size();
    if (n_features_ == 0) {
        throw Error("dataset: at least one feature is required");
    }
    columns_.assign(n_features_, std::vector<double>(cases_.size()));
    labels_.reserve(cases_.size());
    for (std::size_t i = 0; i < cases_.size(); ++i) {
        auto const& c = cases_[i];
        if (c.features.size() != n_features_) {
            throw Error("dataset: feature count differs between cases");
        }
        for (std::size_t k = 0; k < n_features_; ++k) {
            columns_[k][i] = c.features[k];
        }
        labels_.push_back(c.label);
        positives_ += c.label == Label::Positive ? 1 : 0;
    }
    if (positives_ == 0 || positives_ == cases_.size()) {
        throw Error("dataset: both classes must be present");
    }
}

auto load_csv(std::filesystem::path const& path, CsvOptions const& options) -> Dataset
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open dataset file: " + path.string());
    }

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        rows.push_back(split_row(line));
    }
    if (rows.empty()) {
        throw Error("dataset file is empty: " + path.string());
    }

    auto const width = rows.front().size();
    if (width < 2) {
        throw Error("dataset needs at least one feature column and a label column");
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width) {
            throw Error("ragged rows: line " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size())
                + " columns, expected " + std::to_string(width));
        }
    }

    auto const signed_width = static_cast<int>(width);
    auto const label_col = options.label_column < 0 ? signed_width + options.label_column : options.label_column;
    if (label_col < 0 || label_col >= signed_width) {
        throw Error("label column out of range");
    }
    auto const label_index = static_cast<std::size_t>(label_col);

    // Header detection: any non-label cell of the first row failing to parse.
    std::size_t first = 0;
    for (std::size_t k = 0; k < width; ++k) {
        if (k != label_index && !parse_real(rows.front()[k])) {
            first = 1;
            break;
        }
    }
    if (first == rows.size()) {
        throw Error("dataset has a header but no data rows");
    }

    std::map<std::string, std::size_t> token_counts;
    for (std::size_t r = first; r < rows.size(); ++r) {
        ++token_counts[rows[r][label_index]];
    }
    if (token_counts.size() != 2) {
        throw Error("label cardinality: expected exactly 2 distinct labels, found " + std::to_string(token_counts.size()));
    }

    auto lo = token_counts.begin();
    auto hi = std::next(lo);
    std::string positive;
    if (options.positive_label) {
        positive = *options.positive_label;
        if (!token_counts.contains(positive)) {
            throw Error("positive label '" + positive + "' does not occur in the label column");
        }
    } else {
        // map iteration is lexicographic, so the first of two equal counts wins
        positive = hi->second < lo->second ? hi->first : lo->first;
    }
    std::string negative = positive == lo->first ? hi->first : lo->first;

    std::vector<FitnessCase> cases;
    cases.reserve(rows.size() - first);
    for (std::size_t r = first; r < rows.size(); ++r) {
        FitnessCase c;
        c.features.reserve(width - 1);
        for (std::size_t k = 0; k < width; ++k) {
            if (k == label_index) {
                continue;
            }
            auto v = parse_real(rows[r][k]);
            if (!v) {
                throw Error("non-numeric feature value '" + rows[r][k] + "' on line " + std::to_string(r + 1));
            }
            c.features.push_back(*v);
        }
        c.label = rows[r][label_index] == positive ? Label::Positive : Label::Negative;
        cases.push_back(std::move(c));
    }
    return Dataset(std::move(cases), std::move(positive), std::move(negative));
}

auto stratified_split(Dataset const& ds, double train_fraction, std::uint64_t seed) -> std::pair<Dataset, Dataset>
{
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw Error("train fraction must lie in (0, 1)");
    }
    if (ds.positives() < 2 || ds.negatives() < 2) {
        throw Error("stratified split needs at least 2 cases per class");
    }

    Rng rng(seed);
    std::vector<bool> in_train(ds.size(), false);
    for (auto const cls : { Label::Positive, Label::Negative }) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (ds.label(i) == cls) {
                idx.push_back(i);
            }
        }
        std::shuffle(idx.begin(), idx.end(), rng);
        auto const n = static_cast<double>(idx.size());
        auto take = static_cast<std::size_t>(std::llround(n * train_fraction));
        take = std::clamp<std::size_t>(take, 1, idx.size() - 1);
        for (std::size_t j = 0; j < take; ++j) {
            in_train[idx[j]] = true;
        }
    }

    std::vector<FitnessCase> train;
    std::vector<FitnessCase> test;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        (in_train[i] ? train : test).push_back(ds.cases()[i]);
    }
    return { Dataset(std::move(train), ds.positive_token(), ds.negative_token()),
        Dataset(std::move(test), ds.positive_token(), ds.negative_token()) };
}

auto MinMaxScaler::fit(Dataset const& ds) -> MinMaxScaler
{
    MinMaxScaler s;
    for (std::size_t k = 0; k < ds.n_features(); ++k) {
        auto col = ds.column(k);
        auto [mn, mx] = std::minmax_element(col.begin(), col.end());
        s.low_.push_back(*mn);
        s.range_.push_back(*mx - *mn);
    }
    return s;
}

auto MinMaxScaler::transform(Dataset const& ds) const -> Dataset
{
    if (ds.n_features() != low_.size()) {
        throw Error("scaler fitted on a different feature count");
    }
    auto cases = ds.cases();
    for (auto& c : cases) {
        for (std::size_t k = 0; k < c.features.size(); ++k) {
            // constant features map to 0
            c.features[k] = range_[k] > 0.0 ? (c.features[k] - low_[k]) / range_[k] : 0.0;
        }
    }
    return Dataset(std::move(cases), ds.positive_token(), ds.negative_token());
}

} // namespace semgp
