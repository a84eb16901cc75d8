// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "satd/evalkit.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "satd/error.hpp"
#include "satd/random.hpp"

namespace satd {

namespace {

constexpr std::uint64_t kSatdTag = 1;
constexpr std::uint64_t kNonSatdTag = 2;

}  // namespace

FoldPlan stratified_kfold(const ProjectDataset& dataset, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw ConfigError(fmt::format("k = {} folds; need at least 2", k));
    if (dataset.comments.size() < k) {
        throw DataError(fmt::format("project '{}' has {} comments, fewer than k = {}", dataset.project,
                                    dataset.comments.size(), k));
    }
    std::vector<std::int64_t> satd, other;
    for (const auto& c : dataset.comments) (c.label == Label::Satd ? satd : other).push_back(c.id);

    Rng(derive_seed(seed, {kSatdTag})).shuffle(satd);
    Rng(derive_seed(seed, {kNonSatdTag})).shuffle(other);

    FoldPlan plan;
    plan.project = dataset.project;
    plan.k = k;
    plan.seed = seed;
    plan.folds.resize(k);
    std::size_t next = 0;
    for (auto id : satd) plan.folds[next++ % k].push_back(id);
    for (auto id : other) plan.folds[next++ % k].push_back(id);
    for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
    return plan;
}

nlohmann::json to_json(const FoldPlan& plan) {
    return {{"project", plan.project}, {"k", plan.k}, {"seed", plan.seed}, {"folds", plan.folds}};
}

FoldPlan fold_plan_from_json(const nlohmann::json& j) {
    FoldPlan plan;
    try {
        plan.project = j.value("project", std::string{});
        plan.k = j.at("k").get<std::size_t>();
        plan.seed = j.at("seed").get<std::uint64_t>();
        plan.folds = j.at("folds").get<std::vector<std::vector<std::int64_t>>>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(fmt::format("malformed fold plan: {}", e.what()));
    }
    if (plan.folds.size() != plan.k) throw DataError("fold plan: folds.size() != k");
    return plan;
}

std::vector<MtoSplit> mto_splits(const CorpusCollection& collection) {
    if (collection.projects.size() < 2) {
        throw DataError(fmt::format("cross-project splits need at least 2 projects, got {}",
                                    collection.projects.size()));
    }
    std::vector<MtoSplit> splits;
    for (const auto& held_out : collection.projects) {
        MtoSplit split;
        split.test_project = held_out.project;
        for (const auto& p : collection.projects) {
            if (p.project != held_out.project) split.train_projects.push_back(p.project);
        }
        splits.push_back(std::move(split));
    }
    return splits;
}

nlohmann::json to_json(const MtoSplit& split) {
    return {{"test_project", split.test_project}, {"train_projects", split.train_projects}};
}

MetricResult MetricResult::from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
    MetricResult m;
    m.tp = tp;
    m.fp = fp;
    m.fn = fn;
    m.tn = tn;
    m.precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    double denom = m.precision + m.recall;
    m.f1 = denom == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / denom;
    return m;
}

MetricResult compute_metrics(std::span<const Label> predictions, std::span<const Label> truth) {
    if (predictions.size() != truth.size()) {
        throw DataError(fmt::format("{} predictions for {} labels", predictions.size(), truth.size()));
    }
    if (truth.empty()) throw DataError("no labels to evaluate");
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        bool p = predictions[i] == Label::Satd;
        bool t = truth[i] == Label::Satd;
        if (p && t) ++tp;
        else if (p) ++fp;
        else if (t) ++fn;
        else ++tn;
    }
    return MetricResult::from_counts(tp, fp, fn, tn);
}

double mean_f1(std::span<const MetricResult> results) {
    if (results.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& r : results) sum += r.f1;
    return sum / static_cast<double>(results.size());
}

}  // namespace satd
