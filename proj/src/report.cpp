// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include <fmt/format.h>

#include "satd/csv.hpp"
#include "satd/error.hpp"
#include "satd/harness.hpp"

namespace satd {

namespace {

template <class Enum, std::size_t N>
Enum enum_from(const nlohmann::json& j, const char* key, const Enum (&options)[N]) {
    auto text = j.at(key).get<std::string>();
    for (Enum e : options) {
        if (to_string(e) == text) return e;
    }
    throw DataError(fmt::format("report: unknown {} '{}'", key, text));
}

}  // namespace

nlohmann::json to_json(const EvalReport& report, bool with_timestamps) {
    nlohmann::json units = nlohmann::json::array();
    for (const auto& u : report.units) {
        units.push_back({{"project", u.project},
                         {"fold", u.fold},
                         {"ok", u.ok},
                         {"error", u.error},
                         {"tp", u.metrics.tp},
                         {"fp", u.metrics.fp},
                         {"fn", u.metrics.fn},
                         {"tn", u.metrics.tn},
                         {"precision", u.metrics.precision},
                         {"recall", u.metrics.recall},
                         {"f1", u.metrics.f1},
                         {"train_size", u.train_size},
                         {"duplicates", u.duplicates},
                         {"satd_pool", u.satd_pool},
                         {"train_minority_epoch0", u.train_minority_epoch0},
                         {"test_size", u.test_size}});
    }
    nlohmann::json projects = nlohmann::json::array();
    for (const auto& p : report.projects) {
        projects.push_back({{"project", p.project},
                            {"precision", p.precision},
                            {"recall", p.recall},
                            {"f1", p.f1},
                            {"units", p.units},
                            {"failed_units", p.failed_units},
                            {"degenerate", p.degenerate}});
    }
    nlohmann::json j = {{"config_digest", report.config_digest},
                        {"scenario", to_string(report.scenario)},
                        {"classifier", to_string(report.classifier)},
                        {"augmentation", to_string(report.augmentation)},
                        {"seed", report.seed},
                        {"units", std::move(units)},
                        {"projects", std::move(projects)},
                        {"average",
                         {{"precision", report.avg_precision},
                          {"recall", report.avg_recall},
                          {"f1", report.avg_f1}}}};
    if (with_timestamps) {
        j["started_at"] = report.started_at;
        j["finished_at"] = report.finished_at;
    }
    return j;
}

EvalReport eval_report_from_json(const nlohmann::json& j) {
    static constexpr Scenario scenarios[] = {Scenario::Intra, Scenario::Cross};
    static constexpr Augmentation augmentations[] = {Augmentation::None, Augmentation::Fmr,
                                                     Augmentation::DupFmr};
    static constexpr ClassifierKind classifiers[] = {ClassifierKind::Linear, ClassifierKind::MatStrict,
                                                     ClassifierKind::MatFuzzy, ClassifierKind::External};
    EvalReport r;
    try {
        r.config_digest = j.at("config_digest").get<std::string>();
        r.scenario = enum_from(j, "scenario", scenarios);
        r.classifier = enum_from(j, "classifier", classifiers);
        r.augmentation = enum_from(j, "augmentation", augmentations);
        r.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& u : j.at("units")) {
            UnitResult ur;
            ur.project = u.at("project").get<std::string>();
            ur.fold = u.at("fold").get<int>();
            ur.ok = u.at("ok").get<bool>();
            ur.error = u.at("error").get<std::string>();
            ur.metrics.tp = u.at("tp").get<std::size_t>();
            ur.metrics.fp = u.at("fp").get<std::size_t>();
            ur.metrics.fn = u.at("fn").get<std::size_t>();
            ur.metrics.tn = u.at("tn").get<std::size_t>();
            ur.metrics.precision = u.at("precision").get<double>();
            ur.metrics.recall = u.at("recall").get<double>();
            ur.metrics.f1 = u.at("f1").get<double>();
            ur.train_size = u.at("train_size").get<std::size_t>();
            ur.duplicates = u.at("duplicates").get<std::size_t>();
            ur.satd_pool = u.at("satd_pool").get<std::size_t>();
            ur.train_minority_epoch0 = u.at("train_minority_epoch0").get<std::size_t>();
            ur.test_size = u.at("test_size").get<std::size_t>();
            r.units.push_back(std::move(ur));
        }
        for (const auto& p : j.at("projects")) {
            ProjectResult pr;
            pr.project = p.at("project").get<std::string>();
            pr.precision = p.at("precision").get<double>();
            pr.recall = p.at("recall").get<double>();
            pr.f1 = p.at("f1").get<double>();
            pr.units = p.at("units").get<std::size_t>();
            pr.failed_units = p.at("failed_units").get<std::size_t>();
            pr.degenerate = p.at("degenerate").get<bool>();
            r.projects.push_back(std::move(pr));
        }
        const auto& avg = j.at("average");
        r.avg_precision = avg.at("precision").get<double>();
        r.avg_recall = avg.at("recall").get<double>();
        r.avg_f1 = avg.at("f1").get<double>();
        r.started_at = j.value("started_at", "");
        r.finished_at = j.value("finished_at", "");
    } catch (const nlohmann::json::exception& e) {
        throw DataError(fmt::format("malformed report: {}", e.what()));
    }
    return r;
}

std::string render_report(const EvalReport& report, ReportFormat format) {
    if (report.projects.empty()) throw DataError("nothing to render");

    std::string out;
    if (format == ReportFormat::Csv) {
        out = "project,precision,recall,f1\n";
        for (const auto& p : report.projects) {
            out += fmt::format("{},{:.3f},{:.3f},{:.3f}\n", csv::escape(p.project), p.precision, p.recall, p.f1);
        }
        out += fmt::format("Average,{:.3f},{:.3f},{:.3f}\n", report.avg_precision, report.avg_recall,
                           report.avg_f1);
        return out;
    }

    out = fmt::format("{}-project F1 ({}, augmentation: {})\n\n",
                      report.scenario == Scenario::Intra ? "Intra" : "Cross", to_string(report.classifier),
                      to_string(report.augmentation));
    out += "| Project | Precision | Recall | F1 |\n";
    out += "|:--|--:|--:|--:|\n";
    std::string notes;
    for (const auto& p : report.projects) {
        out += fmt::format("| *{}* | {:.3f} | {:.3f} | {:.3f} |\n", p.project, p.precision, p.recall, p.f1);
        if (p.degenerate) notes += fmt::format("- {}: no SATD comments (degenerate)\n", p.project);
        if (p.failed_units > 0) {
            notes += fmt::format("- {}: {} of {} units failed\n", p.project, p.failed_units, p.units);
        }
    }
    out += fmt::format("| **Average** | {:.3f} | {:.3f} | {:.3f} |\n", report.avg_precision, report.avg_recall,
                       report.avg_f1);
    if (!notes.empty()) out += "\n" + notes;
    return out;
}

}  // namespace satd
