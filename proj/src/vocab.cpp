// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "satd/vocab.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "satd/csv.hpp"
#include "satd/error.hpp"
#include "satd/io.hpp"

namespace satd {

namespace {

bool has_whitespace(std::string_view s) noexcept {
    return s.find_first_of(" \t\r\n\f\v") != std::string_view::npos;
}

bool is_special_name(std::string_view s) noexcept {
    return s == kUnkToken || s == kPadToken || s == kClsToken || s == kSepToken;
}

// Byte offsets of every UTF-8 code point start, plus the end offset.
std::vector<std::size_t> char_boundaries(std::string_view word) {
    std::vector<std::size_t> bounds;
    bounds.reserve(word.size() + 1);
    for (std::size_t i = 0; i < word.size(); ++i) {
        auto byte = static_cast<unsigned char>(word[i]);
        if ((byte & 0xC0) != 0x80) bounds.push_back(i);
    }
    bounds.push_back(word.size());
    return bounds;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    index_.reserve(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        const std::string& t = tokens_[i];
        if (t.empty()) throw DataError(fmt::format("vocabulary line {}: empty token", i + 1));
        if (!is_special_name(t) && has_whitespace(t)) {
            throw DataError(fmt::format("vocabulary line {}: token contains whitespace", i + 1));
        }
        if (!index_.emplace(t, static_cast<TokenId>(i)).second) {
            throw DataError(fmt::format("vocabulary line {}: duplicate token '{}'", i + 1, t));
        }
    }
    auto special = [this](std::string_view name) {
        auto id = find(name);
        if (!id) throw DataError(fmt::format("vocabulary is missing special token {}", name));
        return *id;
    };
    unk_ = special(kUnkToken);
    pad_ = special(kPadToken);
    cls_ = special(kClsToken);
    sep_ = special(kSepToken);
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string Vocabulary::serialize() const {
    std::string out;
    for (const auto& t : tokens_) {
        out += t;
        out.push_back('\n');
    }
    return out;
}

Vocabulary parse_vocabulary(std::string_view text) {
    return Vocabulary(io::split_lines(text));
}

Vocabulary load_base_vocabulary(const std::filesystem::path& path) {
    return parse_vocabulary(io::read_file(path));
}

Vocabulary builtin_char_vocabulary() {
    std::vector<std::string> tokens = {std::string(kPadToken), std::string(kUnkToken),
                                       std::string(kClsToken), std::string(kSepToken), "[MASK]"};
    for (char c = '!'; c <= '~'; ++c) tokens.emplace_back(1, c);
    for (char c = '!'; c <= '~'; ++c) tokens.push_back(std::string(kContinuationPrefix) + c);
    return Vocabulary(std::move(tokens));
}

std::vector<ProjectWords> collect_project_words(const CorpusCollection& collection) {
    std::vector<ProjectWords> out;
    out.reserve(collection.projects.size());
    for (const auto& project : collection.projects) {
        ProjectWords pw;
        pw.project = project.project;
        for (const auto& c : project.comments) {
            for (auto& w : segment_words(split_identifiers(c.text).text)) pw.words.insert(std::move(w));
        }
        out.push_back(std::move(pw));
    }
    return out;
}

std::vector<CandidateToken> discover_candidate_tokens(std::span<const ProjectWords> projects,
                                                      const Vocabulary& base, double threshold) {
    if (projects.empty()) throw DataError("cannot discover tokens in an empty collection");
    if (!(threshold >= 0.0 && threshold < 1.0)) {
        throw ConfigError(fmt::format("vocabulary threshold {} outside [0, 1)", threshold));
    }
    std::map<std::string_view, std::size_t> counts;
    for (const auto& pw : projects) {
        for (const auto& w : pw.words) ++counts[w];
    }
    const double total = static_cast<double>(projects.size());
    std::vector<CandidateToken> out;
    for (const auto& [word, count] : counts) {
        // A "##" word would read as a continuation piece.
        if (word.starts_with(kContinuationPrefix) || base.contains(word)) continue;
        double fraction = static_cast<double>(count) / total;
        if (fraction > threshold) out.push_back({std::string(word), count, fraction});
    }
    std::stable_sort(out.begin(), out.end(), [](const CandidateToken& a, const CandidateToken& b) {
        return a.project_count > b.project_count;
    });
    return out;
}

std::vector<CandidateToken> discover_candidate_tokens(const CorpusCollection& collection,
                                                      const Vocabulary& base, double threshold) {
    auto words = collect_project_words(collection);
    return discover_candidate_tokens(words, base, threshold);
}

std::unordered_set<std::string> load_denylist(const std::filesystem::path& path) {
    std::unordered_set<std::string> out;
    for (auto& line : io::split_lines(io::read_file(path))) {
        std::string_view t = io::trim(line);
        if (!t.empty()) out.emplace(t);
    }
    return out;
}

std::vector<CandidateToken> apply_denylist(std::vector<CandidateToken> candidates,
                                           const std::unordered_set<std::string>& denylist) {
    std::erase_if(candidates, [&](const CandidateToken& c) { return denylist.contains(c.token); });
    return candidates;
}

std::vector<CandidateToken> apply_denylist(std::vector<CandidateToken> candidates,
                                           const std::filesystem::path& denylist) {
    return apply_denylist(std::move(candidates), load_denylist(denylist));
}

Vocabulary augment_vocabulary(const Vocabulary& base, std::span<const CandidateToken> finals) {
    std::vector<std::string> tokens(base.tokens().begin(), base.tokens().end());
    tokens.reserve(tokens.size() + finals.size());
    std::unordered_set<std::string_view> added;
    for (const auto& c : finals) {
        if (base.contains(c.token) || !added.insert(c.token).second) {
            throw DataError(fmt::format("token '{}' collides with an existing token", c.token));
        }
        tokens.push_back(c.token);
    }
    return Vocabulary(std::move(tokens));
}

std::string render_candidates(std::span<const CandidateToken> candidates) {
    std::string out = "token,project_count,project_fraction\n";
    for (const auto& c : candidates) {
        out += fmt::format("{},{},{:.4f}\n", csv::escape(c.token), c.project_count, c.project_fraction);
    }
    return out;
}

std::vector<TokenId> tokenize_word(const Vocabulary& vocab, std::string_view word) {
    std::vector<std::size_t> bounds = char_boundaries(word);
    const std::size_t n_chars = bounds.size() - 1;
    if (n_chars == 0) return {};
    if (n_chars > kMaxWordChars) return {vocab.unk()};

    std::vector<TokenId> pieces;
    std::string probe;
    std::size_t start = 0;  // index into bounds
    while (start < n_chars) {
        std::optional<TokenId> found;
        std::size_t end = n_chars;
        for (; end > start; --end) {
            probe.clear();
            if (start > 0) probe += kContinuationPrefix;
            probe += word.substr(bounds[start], bounds[end] - bounds[start]);
            found = vocab.find(probe);
            if (found) break;
        }
        if (!found) return {vocab.unk()};
        pieces.push_back(*found);
        start = end;
    }
    return pieces;
}

TokenSequence tokenize(const Vocabulary& vocab, const PreprocessedText& text, std::size_t max_seq_len,
                       std::int64_t source_id) {
    if (max_seq_len < 2) throw ConfigError("max_seq_len must be at least 2");
    TokenSequence seq;
    seq.source_id = source_id;
    seq.ids.push_back(vocab.cls());
    const std::size_t budget = max_seq_len - 1;  // room left before [SEP]
    for (const auto& word : segment_words(text.text)) {
        for (TokenId id : tokenize_word(vocab, word)) {
            if (seq.ids.size() >= budget) {
                seq.truncated = true;
                break;
            }
            seq.ids.push_back(id);
        }
        if (seq.truncated) break;
    }
    seq.ids.push_back(vocab.sep());
    return seq;
}

}  // namespace satd
