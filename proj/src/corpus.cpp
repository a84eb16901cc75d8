// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "satd/corpus.hpp"

#include <algorithm>
#include <future>
#include <set>

#include <fmt/format.h>

#include "satd/csv.hpp"
#include "satd/error.hpp"
#include "satd/io.hpp"

namespace satd {

namespace fs = std::filesystem;

std::string_view to_string(Label label) noexcept {
    return label == Label::Satd ? "SATD" : "NON_SATD";
}

std::optional<Label> parse_label(std::string_view text) noexcept {
    if (text == "SATD") return Label::Satd;
    if (text == "NON_SATD") return Label::NonSatd;
    return std::nullopt;
}

LabelMapping LabelMapping::standard() {
    return LabelMapping({{"WITHOUT_CLASSIFICATION", Label::NonSatd}}, Label::Satd);
}

LabelMapping LabelMapping::parse(std::string_view text) {
    std::vector<Rule> rules;
    std::optional<Label> fallback;
    std::size_t line_no = 0;
    for (const std::string& raw : io::split_lines(text)) {
        ++line_no;
        std::string_view line = io::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        std::size_t arrow = line.rfind("->");
        if (arrow == std::string_view::npos) {
            throw ConfigError(fmt::format("label mapping line {}: expected 'pattern -> LABEL'", line_no));
        }
        std::string_view pattern = io::trim(line.substr(0, arrow));
        std::string_view target = io::trim(line.substr(arrow + 2));
        if (pattern.empty()) {
            throw ConfigError(fmt::format("label mapping line {}: empty pattern", line_no));
        }
        if (pattern == "*") {
            if (target == "REJECT") {
                fallback.reset();
                continue;
            }
            auto label = parse_label(target);
            if (!label) {
                throw ConfigError(fmt::format("label mapping line {}: unknown label '{}'", line_no, target));
            }
            fallback = label;
            continue;
        }
        auto label = parse_label(target);
        if (!label) {
            throw ConfigError(fmt::format("label mapping line {}: unknown label '{}'", line_no, target));
        }
        rules.push_back({std::string(pattern), *label});
    }
    return LabelMapping(std::move(rules), fallback);
}

LabelMapping LabelMapping::load(const fs::path& path) {
    try {
        return parse(io::read_file(path));
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
}

std::optional<Label> LabelMapping::map(std::string_view raw_label) const {
    for (const Rule& rule : rules_) {
        if (rule.pattern == raw_label) return rule.label;
    }
    if (raw_label.empty()) return std::nullopt;
    return fallback_;
}

ProjectDataset ProjectDataset::from_comments(std::string project, std::vector<Comment> comments) {
    ProjectDataset ds;
    ds.project = std::move(project);
    ds.comments = std::move(comments);
    ds.n_total = ds.comments.size();
    ds.n_satd = static_cast<std::size_t>(std::count_if(
        ds.comments.begin(), ds.comments.end(), [](const Comment& c) { return c.label == Label::Satd; }));
    return ds;
}

const ProjectDataset* CorpusCollection::find(std::string_view project) const noexcept {
    for (const auto& p : projects) {
        if (p.project == project) return &p;
    }
    return nullptr;
}

ProjectDataset parse_project(std::string_view csv_text, const LabelMapping& mapping,
                             const std::string& project_name) {
    std::vector<csv::Record> records = csv::parse(csv_text);
    if (records.empty()) throw DataError("no rows");

    const auto& header = records.front().fields;
    if (header.size() != 3 || header[0] != "project" || header[1] != "comment" ||
        header[2] != "raw_label") {
        throw DataError("expected header 'project,comment,raw_label'");
    }
    if (records.size() == 1) throw DataError("no rows");

    std::vector<Comment> comments;
    std::vector<RejectedRow> rejected;
    comments.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const csv::Record& rec = records[r];
        if (rec.fields.size() != 3) {
            throw DataError(fmt::format("row {} (line {}): expected 3 fields, found {}", r, rec.line,
                                        rec.fields.size()));
        }
        const std::string& text = rec.fields[1];
        const std::string& raw = rec.fields[2];
        if (io::trim(text).empty()) {
            rejected.push_back({r, rec.line, "empty comment text"});
            continue;
        }
        auto label = mapping.map(raw);
        if (!label) {
            throw DataError(fmt::format("row {} (line {}): unmapped raw label '{}'", r, rec.line, raw));
        }
        Comment c;
        c.id = static_cast<std::int64_t>(comments.size());
        c.project = project_name;
        c.text = text;
        c.label = *label;
        c.raw_label = raw;
        comments.push_back(std::move(c));
    }
    if (comments.empty()) throw DataError("no rows with comment text");

    ProjectDataset ds = ProjectDataset::from_comments(project_name, std::move(comments));
    ds.rejected = std::move(rejected);
    return ds;
}

ProjectDataset load_project(const fs::path& path, const LabelMapping& mapping,
                            const std::string& project_name) {
    if (!fs::exists(path)) {
        throw DataError(fmt::format("dataset file '{}' does not exist", path.string()));
    }
    return parse_project(io::read_file(path), mapping, project_name);
}

std::vector<ManifestEntry> parse_manifest(std::string_view text, const fs::path& base_dir) {
    std::vector<ManifestEntry> entries;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    for (const std::string& raw : io::split_lines(text)) {
        ++line_no;
        std::string_view line = io::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw DataError(fmt::format("manifest line {}: expected 'project<TAB>path'", line_no));
        }
        std::string name(io::trim(line.substr(0, tab)));
        fs::path file(std::string(io::trim(line.substr(tab + 1))));
        if (name.empty() || file.empty()) {
            throw DataError(fmt::format("manifest line {}: empty project name or path", line_no));
        }
        if (!seen.insert(name).second) {
            throw DataError(fmt::format("manifest line {}: duplicate project '{}'", line_no, name));
        }
        if (file.is_relative()) file = base_dir / file;
        entries.push_back({std::move(name), std::move(file)});
    }
    if (entries.empty()) throw DataError("empty manifest");
    return entries;
}

CorpusCollection load_collection(const fs::path& manifest, const LabelMapping& mapping,
                                 std::optional<std::string> name) {
    if (!fs::exists(manifest)) {
        throw DataError(fmt::format("manifest '{}' does not exist", manifest.string()));
    }
    auto entries = parse_manifest(io::read_file(manifest), manifest.parent_path());

    std::vector<std::future<ProjectDataset>> pending;
    pending.reserve(entries.size());
    for (const auto& entry : entries) {
        pending.push_back(std::async(std::launch::async, [&entry, &mapping] {
            return load_project(entry.path, mapping, entry.project);
        }));
    }

    CorpusCollection collection;
    collection.name = name ? *name : manifest.stem().string();
    std::optional<std::string> first_error;
    for (std::size_t i = 0; i < pending.size(); ++i) {
        try {
            collection.projects.push_back(pending[i].get());
        } catch (const std::exception& e) {
            if (!first_error) {
                first_error = fmt::format("project '{}': {}", entries[i].project, e.what());
            }
        }
    }
    if (first_error) throw DataError(*first_error);
    return collection;
}

namespace {

ProjectStats make_stats(std::string project, std::size_t total, std::size_t satd) {
    ProjectStats s;
    s.project = std::move(project);
    s.n_total = total;
    s.n_satd = satd;
    s.satd_pct = total == 0 ? 0.0 : 100.0 * static_cast<double>(satd) / static_cast<double>(total);
    return s;
}

}  // namespace

CorpusStats corpus_stats(const CorpusCollection& collection) {
    if (collection.projects.empty()) throw DataError("empty collection");
    CorpusStats stats;
    std::size_t total = 0, satd = 0;
    for (const auto& p : collection.projects) {
        stats.projects.push_back(make_stats(p.project, p.n_total, p.n_satd));
        total += p.n_total;
        satd += p.n_satd;
    }
    stats.total = make_stats("TOTAL", total, satd);
    return stats;
}

std::string render_stats(const CorpusStats& stats) {
    std::string out = "project,n_total,n_satd,satd_pct\n";
    auto row = [&out](const ProjectStats& s) {
        out += fmt::format("{},{},{},{:.2f}\n", csv::escape(s.project), s.n_total, s.n_satd, s.satd_pct);
    };
    for (const auto& s : stats.projects) row(s);
    row(stats.total);
    return out;
}

}  // namespace satd
