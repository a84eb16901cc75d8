// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

// Pieces shared by the in-process runner and the batch exporter.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include "satd/augment.hpp"
#include "satd/config.hpp"
#include "satd/corpus.hpp"
#include "satd/evalkit.hpp"
#include "satd/lexicon.hpp"
#include "satd/vocab.hpp"

namespace satd::detail {

struct UnitSpec {
    std::string project;
    int fold = -1;
};

struct UnitData {
    std::vector<Comment> train;
    std::vector<Comment> test;
};

/// Training set after augmentation plus what the stream needs.
struct TrainingPlan {
    std::vector<Comment> train;
    std::vector<Comment> pool;  // SATD comments FMR draws from
    std::size_t duplicates = 0;
    bool fmr = false;
    SamplerConfig sampler;
};

/// Everything resolved once per run.
struct RunContext {
    const ExperimentConfig* config = nullptr;
    const CorpusCollection* collection = nullptr;
    std::vector<std::string> selected;  // projects evaluated, collection order
    TriggerLexicon dup_lexicon = TriggerLexicon::default_dup();
    std::vector<FoldPlan> folds;
    std::vector<MtoSplit> splits;
    std::vector<UnitSpec> units;
};

RunContext make_context(const ExperimentConfig& config, const CorpusCollection& collection);

std::uint64_t fold_seed(const ExperimentConfig& config, const std::string& project);
std::uint64_t unit_seed(const ExperimentConfig& config, const UnitSpec& unit);

UnitData materialize(const RunContext& ctx, const UnitSpec& unit);
TrainingPlan plan_training(const RunContext& ctx, const UnitSpec& unit, std::vector<Comment> train);
std::unique_ptr<BatchSource> open_stream(const TrainingPlan& plan);

/// SATD items delivered during the first epoch of the plan's stream.
std::size_t minority_in_first_epoch(const TrainingPlan& plan);

std::string unit_name(const UnitSpec& unit);

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace satd::detail
