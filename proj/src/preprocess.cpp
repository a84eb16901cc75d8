// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "satd/preprocess.hpp"

namespace satd {

namespace {

bool is_upper(char c) noexcept { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) noexcept { return c >= 'a' && c <= 'z'; }
bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

PreprocessedText split_identifiers(std::string_view text) {
    PreprocessedText out;
    out.original = std::string(text);
    out.text.reserve(text.size() + text.size() / 4);
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (i > 0 && is_upper(c)) {
            char prev = text[i - 1];
            bool camel = is_lower(prev);
            bool acronym_end = is_upper(prev) && i + 1 < text.size() && is_lower(text[i + 1]);
            if (camel || acronym_end) out.text.push_back(' ');
        }
        out.text.push_back(c);
    }
    return out;
}

std::vector<std::string> segment_words(std::string_view text) {
    std::vector<std::string> words;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            words.push_back(std::move(current));
            current.clear();
        }
    };
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_space(text[i])) {
            flush();
            ++i;
            continue;
        }
        std::string_view rest = text.substr(i);
        bool matched = false;
        for (std::string_view sym : kReservedSymbols) {
            if (rest.starts_with(sym)) {
                flush();
                words.emplace_back(sym);
                i += sym.size();
                matched = true;
                break;
            }
        }
        if (!matched) {
            current.push_back(text[i]);
            ++i;
        }
    }
    flush();
    return words;
}

}  // namespace satd
