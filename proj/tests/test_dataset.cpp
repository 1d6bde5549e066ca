#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "semgp/dataset.hpp"
#include "support.hpp"

using namespace semgp;

namespace {

auto write_file(std::string const& name, std::string const& text) -> std::filesystem::path
{
    auto const path = testing::scratch_dir("dataset_" + name) / "data.csv";
    std::ofstream(path) << text;
    return path;
}

auto make_dataset(std::size_t pos, std::size_t neg) -> Dataset
{
    std::vector<FitnessCase> cases;
    for (std::size_t i = 0; i < pos + neg; ++i) {
        cases.push_back({ { static_cast<double>(i), -static_cast<double>(i) }, i < pos ? Label::Positive : Label::Negative });
    }
    return Dataset(std::move(cases), "pos", "neg");
}

auto sorted_cases(Dataset const& ds) -> std::vector<std::vector<double>>
{
    std::vector<std::vector<double>> out;
    for (auto const& c : ds.cases()) {
        auto row = c.features;
        row.push_back(c.label == Label::Positive ? 1.0 : 0.0);
        out.push_back(std::move(row));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("four rows with a 1:3 label ratio")
{
    auto const path = write_file("four", "a,b,label\n1,2,pos\n3,4,neg\n5,6,neg\n7,8,neg\n");
    auto const ds = load_csv(path);
    CHECK(ds.size() == 4);
    CHECK(ds.positives() == 1);
    CHECK(ds.negatives() == 3);
    CHECK(ds.positive_token() == "pos");
    CHECK(ds.n_features() == 2);
    CHECK(ds.column(1)[2] == 6.0);
}

TEST_CASE("headerless file and explicit positive label")
{
    auto const path = write_file("noheader", "1,2,b\n3,4,a\n");
    auto const ds = load_csv(path, { -1, std::string("b") });
    CHECK(ds.size() == 2);
    CHECK(ds.label(0) == Label::Positive);
    // equal counts: lexicographically smaller token wins
    CHECK(load_csv(path).positive_token() == "a");
}

TEST_CASE("label column in front")
{
    auto const path = write_file("front", "y,x\nyes,1\nno,2\nno,3\n");
    auto const ds = load_csv(path, { 0, std::nullopt });
    CHECK(ds.n_features() == 1);
    CHECK(ds.positive_token() == "yes");
}

TEST_CASE("three distinct labels are rejected")
{
    auto const path = write_file("three", "x,label\n1,a\n2,b\n3,c\n");
    CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("label cardinality"), Error);
}

TEST_CASE("malformed files")
{
    CHECK_THROWS_AS(load_csv(write_file("ragged", "x,y,l\n1,2,a\n1,b\n")), Error);
    CHECK_THROWS_AS(load_csv(write_file("nonnum", "x,l\n1,a\nfoo,b\n")), Error);
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), Error);
}

TEST_CASE("generated 200-row set has 20 positives")
{
    auto const ds = load_csv(testing::synthetic_path());
    CHECK(ds.size() == 200);
    CHECK(ds.positives() == 20);
    CHECK(ds.negatives() == 180);
    CHECK(ds.n_features() == 2);
}

TEST_CASE("stratified split keeps class proportions")
{
    auto const ds = make_dataset(10, 90);
    auto const [train, test] = stratified_split(ds, 0.5, 7);
    CHECK(train.positives() == 5);
    CHECK(train.negatives() == 45);
    CHECK(test.positives() == 5);
    CHECK(test.negatives() == 45);

    auto const again = stratified_split(ds, 0.5, 7);
    CHECK(again.first == train);
    CHECK(again.second == test);
}

TEST_CASE("split is a partition of the original cases")
{
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto const pos = 2 + uniform_index(rng, 20);
        auto const neg = 2 + uniform_index(rng, 80);
        auto const ds = make_dataset(pos, neg);
        auto const frac = 0.05 + 0.9 * uniform01(rng);
        auto const [train, test] = stratified_split(ds, frac, rng());
        CHECK(train.size() + test.size() == ds.size());
        CHECK(train.positives() >= 1);
        CHECK(test.positives() >= 1);

        std::vector<FitnessCase> merged = train.cases();
        merged.insert(merged.end(), test.cases().begin(), test.cases().end());
        CHECK(sorted_cases(Dataset(merged, "pos", "neg")) == sorted_cases(ds));
    }
}

TEST_CASE("split argument checks")
{
    auto const ds = make_dataset(10, 90);
    CHECK_THROWS_AS(stratified_split(ds, 0.0, 1), Error);
    CHECK_THROWS_AS(stratified_split(ds, 1.0, 1), Error);
    CHECK_THROWS_AS(stratified_split(make_dataset(1, 5), 0.5, 1), Error);
}

TEST_CASE("min-max scaling")
{
    auto const ds = make_dataset(2, 3);
    auto const scaled = MinMaxScaler::fit(ds).transform(ds);
    CHECK(scaled.column(0)[0] == 0.0);
    CHECK(scaled.column(0)[4] == 1.0);
    CHECK(scaled.column(1)[0] == 1.0);
    CHECK(scaled.column(0)[2] == doctest::Approx(0.5));
}
