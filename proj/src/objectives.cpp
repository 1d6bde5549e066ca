#include "semgp/objectives.hpp"

namespace semgp {

auto classify(std::span<double const> sem, double threshold) -> std::vector<Label>
{
    std::vector<Label> out;
    out.reserve(sem.size());
    for (auto v : sem) {
        out.push_back(v >= threshold ? Label::Positive : Label::Negative);
    }
    return out;
}

auto confusion(std::span<Label const> predictions, std::span<Label const> labels) -> ConfusionCounts
{
    if (predictions.size() != labels.size()) {
        throw Error("confusion: prediction and label counts differ");
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        bool const pred = predictions[i] == Label::Positive;
        if (labels[i] == Label::Positive) {
            ++(pred ? c.tp : c.fn);
        } else {
            ++(pred ? c.fp : c.tn);
        }
    }
    if (c.tp + c.fn == 0 || c.tn + c.fp == 0) {
        throw Error("confusion: labels contain a single class");
    }
    return c;
}

auto objective_vector(ConfusionCounts const& c) -> ObjectiveVector
{
    return { 1.0 - c.tpr(), 1.0 - c.tnr() };
}

auto classification_objectives(std::span<double const> sem, Dataset const& ds, double threshold) -> ObjectiveVector
{
    if (sem.size() != ds.size()) {
        throw Error("semantics length does not match the dataset");
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < sem.size(); ++i) {
        bool const pred = sem[i] >= threshold;
        if (ds.label(i) == Label::Positive) {
            ++(pred ? c.tp : c.fn);
        } else {
            ++(pred ? c.fp : c.tn);
        }
    }
    return objective_vector(c);
}

} // namespace semgp
