// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "satd/corpus.hpp"

namespace satd {

enum class MatchMode { Strict, Fuzzy };

std::string_view to_string(MatchMode mode) noexcept;

/// Lowercase trigger words. Triggers consist of word characters only
/// (ASCII letters, digits, or non-ASCII bytes), which keeps every strict
/// match a fuzzy match as well.
class TriggerLexicon {
public:
    TriggerLexicon(std::vector<std::string> triggers, MatchMode mode);

    /// {todo, fixme, xxx, hack}
    static TriggerLexicon default_mat(MatchMode mode = MatchMode::Strict);
    /// MAT tags plus "ugly".
    static TriggerLexicon default_dup();

    /// One trigger per line; blank lines and `#` comments skipped.
    static TriggerLexicon load(const std::filesystem::path& path, MatchMode mode);
    static TriggerLexicon parse(std::string_view text, MatchMode mode);

    MatchMode mode() const noexcept { return mode_; }
    TriggerLexicon with_mode(MatchMode mode) const { return TriggerLexicon(triggers_, mode); }

    /// Longest first, ties lexicographic.
    const std::vector<std::string>& triggers() const noexcept { return triggers_; }

private:
    std::vector<std::string> triggers_;
    MatchMode mode_;
};

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    auto operator<=>(const Span&) const = default;
};

/// Case-insensitive, non-overlapping, left to right, longest trigger first
/// at equal start. Strict matches must be whole words.
std::vector<Span> find_triggers(const TriggerLexicon& lex, std::string_view text);
std::vector<Span> find_triggers(const TriggerLexicon& lex, std::string_view text, MatchMode mode);

/// Deletes every strict trigger span (and one ':' right after it), collapsing
/// the spaces around each deletion to one and trimming the ends. Text without
/// triggers is returned unchanged.
std::string remove_triggers(const TriggerLexicon& lex, std::string_view text);

Label mat_classify(const TriggerLexicon& lex, const Comment& comment);

}  // namespace satd
