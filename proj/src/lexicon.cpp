// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "satd/lexicon.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "satd/error.hpp"
#include "satd/io.hpp"

namespace satd {

namespace {

char lower(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_word_byte(char c) noexcept {
    auto b = static_cast<unsigned char>(c);
    return (b >= '0' && b <= '9') || (b >= 'a' && b <= 'z') || (b >= 'A' && b <= 'Z') || b >= 0x80;
}

bool matches_at(std::string_view text, std::size_t pos, std::string_view trigger) noexcept {
    if (pos + trigger.size() > text.size()) return false;
    for (std::size_t i = 0; i < trigger.size(); ++i) {
        if (lower(text[pos + i]) != trigger[i]) return false;
    }
    return true;
}

bool is_horizontal_space(char c) noexcept { return c == ' ' || c == '\t'; }

}  // namespace

std::string_view to_string(MatchMode mode) noexcept {
    return mode == MatchMode::Strict ? "strict" : "fuzzy";
}

TriggerLexicon::TriggerLexicon(std::vector<std::string> triggers, MatchMode mode) : mode_(mode) {
    for (auto& t : triggers) {
        std::transform(t.begin(), t.end(), t.begin(), lower);
        if (t.empty()) throw ConfigError("empty trigger word");
        if (!std::all_of(t.begin(), t.end(), is_word_byte)) {
            throw ConfigError(fmt::format("trigger '{}' must contain only letters and digits", t));
        }
    }
    std::sort(triggers.begin(), triggers.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    triggers.erase(std::unique(triggers.begin(), triggers.end()), triggers.end());
    if (triggers.empty()) throw ConfigError("trigger lexicon is empty");
    triggers_ = std::move(triggers);
}

TriggerLexicon TriggerLexicon::default_mat(MatchMode mode) {
    return TriggerLexicon({"todo", "fixme", "xxx", "hack"}, mode);
}

TriggerLexicon TriggerLexicon::default_dup() {
    return TriggerLexicon({"todo", "fixme", "xxx", "hack", "ugly"}, MatchMode::Strict);
}

TriggerLexicon TriggerLexicon::parse(std::string_view text, MatchMode mode) {
    std::vector<std::string> triggers;
    for (const auto& raw : io::split_lines(text)) {
        std::string_view line = io::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        triggers.emplace_back(line);
    }
    return TriggerLexicon(std::move(triggers), mode);
}

TriggerLexicon TriggerLexicon::load(const std::filesystem::path& path, MatchMode mode) {
    std::string text;
    try {
        text = io::read_file(path);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
    return parse(text, mode);
}

std::vector<Span> find_triggers(const TriggerLexicon& lex, std::string_view text, MatchMode mode) {
    std::vector<Span> spans;
    std::size_t pos = 0;
    while (pos < text.size()) {
        bool left_ok = pos == 0 || !is_word_byte(text[pos - 1]);
        const std::string* hit = nullptr;
        if (mode == MatchMode::Fuzzy || left_ok) {
            for (const auto& trigger : lex.triggers()) {
                if (!matches_at(text, pos, trigger)) continue;
                std::size_t end = pos + trigger.size();
                if (mode == MatchMode::Strict && end < text.size() && is_word_byte(text[end])) continue;
                hit = &trigger;
                break;
            }
        }
        if (hit) {
            spans.push_back({pos, pos + hit->size()});
            pos += hit->size();
        } else {
            ++pos;
        }
    }
    return spans;
}

std::vector<Span> find_triggers(const TriggerLexicon& lex, std::string_view text) {
    return find_triggers(lex, text, lex.mode());
}

std::string remove_triggers(const TriggerLexicon& lex, std::string_view text) {
    std::vector<Span> spans = find_triggers(lex, text, MatchMode::Strict);
    if (spans.empty()) return std::string(text);

    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    for (const Span& span : spans) {
        if (span.begin < pos) continue;  // consumed by a previous deletion's space skip
        out.append(text.substr(pos, span.begin - pos));
        std::size_t after = span.end;
        if (after < text.size() && text[after] == ':') ++after;

        bool had_space = false;
        while (!out.empty() && is_horizontal_space(out.back())) {
            out.pop_back();
            had_space = true;
        }
        while (after < text.size() && is_horizontal_space(text[after])) {
            ++after;
            had_space = true;
        }
        if (had_space) out.push_back(' ');
        pos = after;
    }
    out.append(text.substr(pos));
    return std::string(io::trim(out));
}

Label mat_classify(const TriggerLexicon& lex, const Comment& comment) {
    return find_triggers(lex, comment.text).empty() ? Label::NonSatd : Label::Satd;
}

}  // namespace satd
