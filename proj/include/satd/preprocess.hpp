// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace satd {

struct PreprocessedText {
    std::string text;
    std::string original;

    bool operator==(const PreprocessedText&) const = default;
};

/// Splits Java-style identifiers by inserting one space
///   (a) between a lowercase letter and a following uppercase letter, and
///   (b) before the last capital of an uppercase run that is followed by a
///       lowercase letter ("HTTPResponse" -> "HTTP Response").
/// Everything else, digits included, is copied through unchanged.
PreprocessedText split_identifiers(std::string_view text);

/// Symbols that always form words of their own.
inline constexpr std::array<std::string_view, 6> kReservedSymbols = {"/*", "*/", "//",
                                                                     "[]", "()", ";"};

/// Whitespace-separated words, with every reserved symbol occurrence split
/// out as its own word (matched left to right). Other punctuation stays
/// attached. Never yields empty words.
std::vector<std::string> segment_words(std::string_view text);

}  // namespace satd
