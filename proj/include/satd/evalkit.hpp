// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "satd/corpus.hpp"

namespace satd {

struct FoldPlan {
    std::string project;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::int64_t>> folds;  // ids, ascending within a fold

    bool operator==(const FoldPlan&) const = default;
};

/// SATD and NON_SATD ids are shuffled independently and dealt round-robin,
/// the NON_SATD deal continuing at the fold after the last SATD. Fold sizes
/// and per-fold SATD counts each differ by at most one.
FoldPlan stratified_kfold(const ProjectDataset& dataset, std::size_t k, std::uint64_t seed);

nlohmann::json to_json(const FoldPlan& plan);
FoldPlan fold_plan_from_json(const nlohmann::json& j);

struct MtoSplit {
    std::string test_project;
    std::vector<std::string> train_projects;

    bool operator==(const MtoSplit&) const = default;
};

/// One many-to-one split per project, in collection order.
std::vector<MtoSplit> mto_splits(const CorpusCollection& collection);

nlohmann::json to_json(const MtoSplit& split);

struct MetricResult {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0, recall = 0.0, f1 = 0.0;

    /// Ratios with a zero denominator are 0.
    static MetricResult from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);

    bool operator==(const MetricResult&) const = default;
};

/// SATD is the positive class.
MetricResult compute_metrics(std::span<const Label> predictions, std::span<const Label> truth);

/// Unweighted mean of per-unit F1 values.
double mean_f1(std::span<const MetricResult> results);

}  // namespace satd
