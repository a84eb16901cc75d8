// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace satd {

enum class Label : std::uint8_t { NonSatd = 0, Satd = 1 };

std::string_view to_string(Label label) noexcept;
/// Accepts "SATD" and "NON_SATD".
std::optional<Label> parse_label(std::string_view text) noexcept;

struct Comment {
    std::int64_t id = 0;
    std::string project;
    std::string text;
    Label label = Label::NonSatd;
    std::string raw_label;
    // Set on augmented duplicates: id of the comment they were derived from.
    std::optional<std::int64_t> source_id;

    bool operator==(const Comment&) const = default;
};

/// (project, id) uniquely names a comment across a collection.
struct CommentKey {
    std::string project;
    std::int64_t id = 0;

    auto operator<=>(const CommentKey&) const = default;
};

inline CommentKey key_of(const Comment& c) { return {c.project, c.id}; }

struct CommentKeyHash {
    std::size_t operator()(const CommentKey& k) const noexcept {
        return std::hash<std::string>{}(k.project) * 1000003u ^ std::hash<std::int64_t>{}(k.id);
    }
};

/// Ordered raw-label rules. The first exact match wins; otherwise the
/// fallback applies, and an absent fallback means the label is rejected.
class LabelMapping {
public:
    struct Rule {
        std::string pattern;
        Label label;
    };

    LabelMapping() = default;
    LabelMapping(std::vector<Rule> rules, std::optional<Label> fallback)
        : rules_(std::move(rules)), fallback_(fallback) {}

    /// "WITHOUT_CLASSIFICATION" -> NON_SATD, anything else -> SATD.
    static LabelMapping standard();

    /// Parses `pattern -> SATD|NON_SATD` lines; `*` sets the fallback and
    /// `* -> REJECT` clears it. Blank lines and `#` comments are skipped.
    static LabelMapping parse(std::string_view text);
    static LabelMapping load(const std::filesystem::path& path);

    std::optional<Label> map(std::string_view raw_label) const;

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    std::optional<Label> fallback() const noexcept { return fallback_; }

private:
    std::vector<Rule> rules_;
    std::optional<Label> fallback_;
};

struct RejectedRow {
    std::size_t row = 0;   // 1-based data row, header excluded
    std::size_t line = 0;  // 1-based source line
    std::string reason;
};

struct ProjectDataset {
    std::string project;
    std::vector<Comment> comments;
    std::size_t n_total = 0;
    std::size_t n_satd = 0;
    std::vector<RejectedRow> rejected;

    /// Builds a dataset from comments, filling the counts.
    static ProjectDataset from_comments(std::string project, std::vector<Comment> comments);
};

struct CorpusCollection {
    std::string name;
    std::vector<ProjectDataset> projects;

    const ProjectDataset* find(std::string_view project) const noexcept;
};

/// Parses dataset CSV text (header `project,comment,raw_label`). Rows whose
/// comment is blank are rejected and recorded; every other problem throws
/// DataError naming the row.
ProjectDataset parse_project(std::string_view csv_text, const LabelMapping& mapping,
                             const std::string& project_name);

ProjectDataset load_project(const std::filesystem::path& path, const LabelMapping& mapping,
                            const std::string& project_name);

struct ManifestEntry {
    std::string project;
    std::filesystem::path path;
};

/// `name<TAB>path` per line; relative paths resolve against `base_dir`.
std::vector<ManifestEntry> parse_manifest(std::string_view text,
                                          const std::filesystem::path& base_dir);

/// Loads every project listed in the manifest, in parallel. Fails as a
/// whole if any project fails. The collection is named after the manifest
/// file stem unless `name` is given.
CorpusCollection load_collection(const std::filesystem::path& manifest,
                                 const LabelMapping& mapping,
                                 std::optional<std::string> name = std::nullopt);

struct ProjectStats {
    std::string project;
    std::size_t n_total = 0;
    std::size_t n_satd = 0;
    double satd_pct = 0.0;
};

struct CorpusStats {
    std::vector<ProjectStats> projects;
    ProjectStats total;
};

CorpusStats corpus_stats(const CorpusCollection& collection);

/// CSV `project,n_total,n_satd,satd_pct` with a final TOTAL row; percentages
/// to two decimals.
std::string render_stats(const CorpusStats& stats);

}  // namespace satd
