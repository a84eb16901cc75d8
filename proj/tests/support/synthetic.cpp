// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "synthetic.hpp"

#include <atomic>
#include <cmath>
#include <fstream>

#include <unistd.h>

#include <fmt/format.h>

#include "satd/csv.hpp"
#include "satd/random.hpp"

namespace satd::fixtures {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string>& filler_words() {
    static const std::vector<std::string> words = {
        "the",      "value",   "returns",  "index",    "buffer",   "when",    "is",       "null",
        "this",     "method",  "called",   "from",     "parser",   "we",      "need",     "to",
        "check",    "list",    "of",       "items",    "node",     "tree",    "in",       "order",
        "cache",    "size",    "default",  "config",   "used",     "by",      "client",   "server",
        "request",  "response", "handler", "thread",   "lock",     "state",   "update",   "field",
        "getValue()", "setName()", "loop",  "counter",  "stream",   "file",    "path",     "string",
        "map",      "key",     "entry",    "array",    "length",   "offset",  "parentLoader", "ClassLoader",
        "event",    "listener", "widget",  "layout",   "render",   "frame",   "error",    "message"};
    return words;
}

}  // namespace

std::string filler_comment(std::uint64_t seed, std::size_t min_words, std::size_t max_words) {
    Rng rng(seed);
    const auto& words = filler_words();
    std::size_t n = min_words + rng.index(max_words - min_words + 1);
    std::string out = rng.chance(0.5) ? "//" : "/*";
    for (std::size_t i = 0; i < n; ++i) out += " " + words[rng.index(words.size())];
    if (out.starts_with("/*")) out += " */";
    return out;
}

CorpusCollection make_planted_corpus(const PlantedSpec& spec) {
    CorpusCollection collection;
    collection.name = "planted";
    for (std::size_t p = 0; p < spec.projects; ++p) {
        std::string name = fmt::format("Project{}", p);
        Rng rng(derive_seed(spec.seed, {p}));
        auto n_satd = static_cast<std::size_t>(std::llround(spec.satd_fraction *
                                                            static_cast<double>(spec.comments_per_project)));
        std::vector<bool> is_satd(spec.comments_per_project, false);
        for (std::size_t i = 0; i < n_satd; ++i) is_satd[i] = true;
        rng.shuffle(is_satd);

        std::vector<Comment> comments;
        for (std::size_t i = 0; i < spec.comments_per_project; ++i) {
            std::string text = filler_comment(derive_seed(spec.seed, {p, i, 1}));
            if (is_satd[i]) {
                const std::string& trigger = spec.triggers[rng.index(spec.triggers.size())];
                std::string tag = rng.chance(0.5) ? trigger + ":" : trigger;
                // Insert right after the opening marker.
                text = text.substr(0, 2) + " " + tag + text.substr(2);
            }
            Comment c;
            c.id = static_cast<std::int64_t>(i);
            c.project = name;
            c.text = std::move(text);
            c.label = is_satd[i] ? Label::Satd : Label::NonSatd;
            c.raw_label = is_satd[i] ? "DESIGN" : "WITHOUT_CLASSIFICATION";
            comments.push_back(std::move(c));
        }
        collection.projects.push_back(ProjectDataset::from_comments(name, std::move(comments)));
    }
    return collection;
}

ProjectDataset make_labeled_project(const std::string& name, const std::vector<Label>& labels) {
    std::vector<Comment> comments;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        Comment c;
        c.id = static_cast<std::int64_t>(i);
        c.project = name;
        c.text = fmt::format("// comment {}", i);
        c.label = labels[i];
        c.raw_label = labels[i] == Label::Satd ? "DESIGN" : "WITHOUT_CLASSIFICATION";
        comments.push_back(std::move(c));
    }
    return ProjectDataset::from_comments(name, std::move(comments));
}

TempDir::TempDir(const std::string& prefix) {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() / fmt::format("{}-{}-{}", prefix, ::getpid(), counter.fetch_add(1));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

fs::path TempDir::write(const std::string& name, const std::string& contents) const {
    fs::path p = path_ / name;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << contents;
    return p;
}

fs::path write_collection(const TempDir& dir, const CorpusCollection& collection) {
    std::string manifest;
    for (const auto& project : collection.projects) {
        std::string csv_text = "project,comment,raw_label\n";
        for (const auto& c : project.comments) {
            csv_text += csv::join_row({project.project, c.text, c.raw_label}) + "\n";
        }
        dir.write(project.project + ".csv", csv_text);
        manifest += project.project + "\t" + project.project + ".csv\n";
    }
    return dir.write(collection.name + ".tsv", manifest);
}

}  // namespace satd::fixtures
