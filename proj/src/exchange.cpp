// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "harness_internal.hpp"
#include "satd/error.hpp"
#include "satd/harness.hpp"
#include "satd/io.hpp"

namespace satd {

namespace fs = std::filesystem;

PredictionMap parse_predictions(std::string_view jsonl) {
    PredictionMap out;
    std::size_t line_no = 0;
    for (const auto& raw : io::split_lines(jsonl)) {
        ++line_no;
        if (io::trim(raw).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(raw);
        } catch (const nlohmann::json::exception&) {
            throw DataError(fmt::format("predictions line {}: not valid JSON", line_no));
        }
        if (!j.is_object() || !j.contains("project") || !j["project"].is_string() || !j.contains("id") ||
            !j["id"].is_number_integer() || !j.contains("score") || !j["score"].is_number()) {
            throw DataError(fmt::format(
                "predictions line {}: expected {{\"project\":string,\"id\":integer,\"score\":number}}", line_no));
        }
        double score = j["score"].get<double>();
        if (!(score >= 0.0 && score <= 1.0)) {
            throw DataError(fmt::format("predictions line {}: score {} outside [0, 1]", line_no, score));
        }
        CommentKey key{j["project"].get<std::string>(), j["id"].get<std::int64_t>()};
        if (!out.emplace(key, score).second) {
            throw DataError(fmt::format("predictions line {}: duplicate prediction for {}:{}", line_no,
                                        key.project, key.id));
        }
    }
    return out;
}

PredictionMap import_predictions(const fs::path& path) { return parse_predictions(io::read_file(path)); }

void require_predictions(const PredictionMap& predictions, const std::vector<CommentKey>& expected) {
    std::vector<const CommentKey*> missing;
    for (const auto& key : expected) {
        if (!predictions.contains(key)) missing.push_back(&key);
    }
    if (missing.empty()) return;
    std::string list;
    constexpr std::size_t kShown = 20;
    for (std::size_t i = 0; i < missing.size() && i < kShown; ++i) {
        list += fmt::format("{}{}:{}", i ? ", " : "", missing[i]->project, missing[i]->id);
    }
    if (missing.size() > kShown) list += fmt::format(", ... ({} more)", missing.size() - kShown);
    throw DataError(fmt::format("{} missing prediction(s): {}", missing.size(), list));
}

std::size_t write_batches_jsonl(BatchSource& stream, std::span<const Comment> comments, std::ostream& out) {
    std::unordered_map<CommentKey, const Comment*, CommentKeyHash> lookup;
    for (const auto& c : comments) lookup.emplace(key_of(c), &c);

    std::size_t lines = 0;
    while (auto batch = stream.next()) {
        nlohmann::ordered_json items = nlohmann::ordered_json::array();
        for (const auto& item : batch->items) {
            auto it = lookup.find(item.key);
            if (it == lookup.end()) {
                throw RunError(fmt::format("batch item {}:{} is not a training comment", item.key.project,
                                           item.key.id));
            }
            items.push_back({{"project", item.key.project},
                             {"id", item.key.id},
                             {"text", it->second->text},
                             {"label", item.label == Label::Satd ? 1 : 0}});
        }
        nlohmann::ordered_json line = {{"epoch", batch->epoch},
                                       {"batch", batch->batch_index},
                                       {"adjusted", batch->adjusted},
                                       {"items", std::move(items)}};
        out << line.dump() << '\n';
        ++lines;
    }
    return lines;
}

ExportSummary export_batches(const ExperimentConfig& config, const CorpusCollection& collection,
                             const fs::path& out_dir) {
    detail::RunContext ctx = detail::make_context(config, collection);
    ExportSummary summary;
    summary.directory = out_dir;

    nlohmann::ordered_json units = nlohmann::ordered_json::array();
    for (const auto& unit : ctx.units) {
        detail::UnitData data = detail::materialize(ctx, unit);
        detail::TrainingPlan plan = detail::plan_training(ctx, unit, std::move(data.train));
        std::string name = detail::unit_name(unit);

        std::ostringstream batches;
        auto stream = detail::open_stream(plan);
        std::size_t lines = write_batches_jsonl(*stream, plan.train, batches);
        io::write_atomic(out_dir / (name + ".batches.jsonl"), batches.str());

        std::string test;
        std::vector<std::int64_t> test_ids;
        for (const auto& c : data.test) {
            nlohmann::ordered_json line = {{"project", c.project}, {"id", c.id}, {"text", c.text}};
            test += line.dump() + "\n";
            test_ids.push_back(c.id);
        }
        io::write_atomic(out_dir / (name + ".test.jsonl"), test);

        units.push_back({{"unit", name},
                         {"project", unit.project},
                         {"fold", unit.fold},
                         {"batches_file", name + ".batches.jsonl"},
                         {"test_file", name + ".test.jsonl"},
                         {"batches", lines},
                         {"train_size", plan.train.size()},
                         {"duplicates", plan.duplicates},
                         {"satd_pool", plan.pool.size()},
                         {"fmr", plan.fmr},
                         {"test_ids", test_ids}});
        ++summary.units;
        summary.batch_lines += lines;
    }

    nlohmann::json folds = nlohmann::json::array();
    for (const auto& f : ctx.folds) folds.push_back(to_json(f));
    for (const auto& s : ctx.splits) folds.push_back(to_json(s));
    io::write_atomic(out_dir / "folds.json", folds.dump(2) + "\n");
    io::write_atomic(out_dir / "units.json", units.dump(2) + "\n");
    return summary;
}

}  // namespace satd
