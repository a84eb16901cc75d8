// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "satd/config.hpp"
#include "satd/corpus.hpp"
#include "satd/evalkit.hpp"

namespace satd {

/// One evaluation unit: a fold (intra) or a held-out project (cross).
struct UnitResult {
    std::string project;
    int fold = -1;  // -1 for cross-project units
    bool ok = true;
    std::string error;
    MetricResult metrics;
    std::size_t train_size = 0;       // after augmentation
    std::size_t duplicates = 0;
    std::size_t satd_pool = 0;
    std::size_t train_minority_epoch0 = 0;  // SATD items fed during epoch 0
    std::size_t test_size = 0;

    bool operator==(const UnitResult&) const = default;
};

struct ProjectResult {
    std::string project;
    double precision = 0.0, recall = 0.0, f1 = 0.0;  // unweighted means over ok units
    std::size_t units = 0;
    std::size_t failed_units = 0;
    bool degenerate = false;  // no SATD comment in the project

    bool operator==(const ProjectResult&) const = default;
};

struct EvalReport {
    std::string config_digest;
    Scenario scenario = Scenario::Intra;
    ClassifierKind classifier = ClassifierKind::Linear;
    Augmentation augmentation = Augmentation::None;
    std::uint64_t seed = 0;
    std::vector<UnitResult> units;
    std::vector<ProjectResult> projects;
    // Unweighted means of the per-project values.
    double avg_precision = 0.0, avg_recall = 0.0, avg_f1 = 0.0;
    // Wall-clock bounds; kept out of report.json so reruns diff cleanly.
    std::string started_at, finished_at;
};

/// Fills per-project aggregates and the averages from `units`.
void aggregate(EvalReport& report, const CorpusCollection* collection = nullptr);

nlohmann::json to_json(const EvalReport& report, bool with_timestamps = false);
EvalReport eval_report_from_json(const nlohmann::json& j);

enum class ReportFormat { Csv, Markdown };

/// Per-project rows and an Average row, three decimals. Throws DataError
/// "nothing to render" for a report without projects.
std::string render_report(const EvalReport& report, ReportFormat format);

struct Prediction {
    CommentKey key;
    double score = 0.0;
};

struct RunOutput {
    EvalReport report;
    std::vector<FoldPlan> folds;        // intra
    std::vector<MtoSplit> splits;       // cross
    std::vector<Prediction> predictions;  // every scored test comment, unit order
    std::vector<std::string> log;
};

/// Loads the manifest named by the config, restricted to `config.projects`.
CorpusCollection load_experiment_corpus(const ExperimentConfig& config);

RunOutput run_intra(const ExperimentConfig& config, const CorpusCollection& collection);
RunOutput run_cross(const ExperimentConfig& config, const CorpusCollection& collection);
RunOutput run_experiment(const ExperimentConfig& config, const CorpusCollection& collection);
RunOutput run_experiment(const ExperimentConfig& config);

/// Writes report.{json,csv,md}, folds.json, predictions.jsonl and log.txt
/// under <outdir>/<digest>/ and returns that directory.
std::filesystem::path write_run(const ExperimentConfig& config, const RunOutput& run);

// ---------------------------------------------------------------------------
// External trainer bridge

using PredictionMap = std::map<CommentKey, double>;

/// Parses `{"project":p,"id":i,"score":s}` lines. Throws DataError naming
/// the line for malformed JSON, scores outside [0, 1], or duplicates.
PredictionMap parse_predictions(std::string_view jsonl);
PredictionMap import_predictions(const std::filesystem::path& path);

/// Throws DataError listing every expected key without a prediction.
void require_predictions(const PredictionMap& predictions, const std::vector<CommentKey>& expected);

struct ExportSummary {
    std::filesystem::path directory;
    std::size_t units = 0;
    std::size_t batch_lines = 0;
};

/// For every unit, writes the post-augmentation training batch stream
/// (`<unit>.batches.jsonl`), the test comments (`<unit>.test.jsonl`),
/// plus folds.json and units.json describing the splits.
ExportSummary export_batches(const ExperimentConfig& config, const CorpusCollection& collection,
                             const std::filesystem::path& out_dir);

/// One JSON line per batch:
/// {"epoch":e,"batch":b,"adjusted":bool,"items":[{"project","id","text","label"}]}
std::size_t write_batches_jsonl(BatchSource& stream, std::span<const Comment> comments,
                                std::ostream& out);

}  // namespace satd
