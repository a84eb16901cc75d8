// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "satd/corpus.hpp"
#include "satd/preprocess.hpp"

namespace satd {

using TokenId = std::uint32_t;

inline constexpr std::string_view kContinuationPrefix = "##";
inline constexpr std::string_view kUnkToken = "[UNK]";
inline constexpr std::string_view kPadToken = "[PAD]";
inline constexpr std::string_view kClsToken = "[CLS]";
inline constexpr std::string_view kSepToken = "[SEP]";

/// Words longer than this many code points tokenize to UNK.
inline constexpr std::size_t kMaxWordChars = 100;
inline constexpr std::size_t kDefaultMaxSeqLen = 128;

/// An immutable subword vocabulary; the line number of a token is its id.
class Vocabulary {
public:
    /// Validates uniqueness, non-empty tokens, no whitespace outside the
    /// specials, and presence of [UNK], [PAD], [CLS], [SEP].
    explicit Vocabulary(std::vector<std::string> tokens);

    std::size_t size() const noexcept { return tokens_.size(); }
    std::span<const std::string> tokens() const noexcept { return tokens_; }
    const std::string& token(TokenId id) const { return tokens_.at(id); }

    std::optional<TokenId> find(std::string_view token) const;
    bool contains(std::string_view token) const { return find(token).has_value(); }

    TokenId unk() const noexcept { return unk_; }
    TokenId pad() const noexcept { return pad_; }
    TokenId cls() const noexcept { return cls_; }
    TokenId sep() const noexcept { return sep_; }
    bool is_special(TokenId id) const noexcept {
        return id == unk_ || id == pad_ || id == cls_ || id == sep_;
    }

    /// One token per line.
    std::string serialize() const;

    bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, TokenId> index_;
    TokenId unk_ = 0, pad_ = 0, cls_ = 0, sep_ = 0;
};

Vocabulary load_base_vocabulary(const std::filesystem::path& path);
Vocabulary parse_vocabulary(std::string_view text);

/// Specials, [MASK], and every printable ASCII character both as an initial
/// piece and as a "##" continuation. Any ASCII word is coverable by it.
Vocabulary builtin_char_vocabulary();

struct CandidateToken {
    std::string token;
    std::size_t project_count = 0;
    double project_fraction = 0.0;

    bool operator==(const CandidateToken&) const = default;
};

/// Distinct segmented words of each project, in collection order.
struct ProjectWords {
    std::string project;
    std::unordered_set<std::string> words;
};

std::vector<ProjectWords> collect_project_words(const CorpusCollection& collection);

/// Words that are not already whole tokens of `base` and occur in strictly
/// more than `threshold` of the projects. Sorted by descending project count,
/// then lexicographically.
std::vector<CandidateToken> discover_candidate_tokens(const CorpusCollection& collection,
                                                      const Vocabulary& base,
                                                      double threshold = 0.25);
std::vector<CandidateToken> discover_candidate_tokens(std::span<const ProjectWords> projects,
                                                      const Vocabulary& base,
                                                      double threshold = 0.25);

std::vector<CandidateToken> apply_denylist(std::vector<CandidateToken> candidates,
                                           const std::unordered_set<std::string>& denylist);
std::vector<CandidateToken> apply_denylist(std::vector<CandidateToken> candidates,
                                           const std::filesystem::path& denylist);
std::unordered_set<std::string> load_denylist(const std::filesystem::path& path);

/// Base tokens followed by the finals; base ids are unchanged. Throws
/// DataError when a final collides with an existing token.
Vocabulary augment_vocabulary(const Vocabulary& base, std::span<const CandidateToken> finals);

/// CSV `token,project_count,project_fraction`.
std::string render_candidates(std::span<const CandidateToken> candidates);

struct TokenSequence {
    std::vector<TokenId> ids;
    bool truncated = false;
    std::int64_t source_id = -1;

    bool operator==(const TokenSequence&) const = default;
};

/// Greedy longest-prefix pieces of one word. A word with an unmatchable
/// remainder, or longer than kMaxWordChars, is a single UNK.
std::vector<TokenId> tokenize_word(const Vocabulary& vocab, std::string_view word);

/// [CLS] + pieces of every word + [SEP]. When that exceeds max_seq_len the
/// pieces are cut so that [SEP] still closes the sequence.
TokenSequence tokenize(const Vocabulary& vocab, const PreprocessedText& text,
                       std::size_t max_seq_len = kDefaultMaxSeqLen, std::int64_t source_id = -1);

}  // namespace satd
