// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#include "satd/csv.hpp"

#include <fmt/format.h>

#include "satd/error.hpp"

namespace satd::csv {

std::vector<Record> parse(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    std::vector<Record> records;
    Record current;
    std::string field;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto end_record = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        bool blank = current.fields.size() == 1 && current.fields[0].empty();
        if (!blank) records.push_back(std::move(current));
        current = Record{};
    };

    current.line = line;
    bool at_field_start = true;
    while (i < n) {
        char c = text[i];
        if (at_field_start && c == '"') {
            std::size_t open_line = line;
            ++i;
            for (;;) {
                if (i >= n) {
                    throw DataError(fmt::format("line {}: unterminated quoted field", open_line));
                }
                char q = text[i];
                if (q == '"') {
                    if (i + 1 < n && text[i + 1] == '"') {
                        field.push_back('"');
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                if (q == '\n') ++line;
                field.push_back(q);
                ++i;
            }
            if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                throw DataError(fmt::format("line {}: unexpected text after closing quote", line));
            }
            at_field_start = false;
            continue;
        }
        if (c == ',') {
            current.fields.push_back(std::move(field));
            field.clear();
            at_field_start = true;
            ++i;
        } else if (c == '\r' && i + 1 < n && text[i + 1] == '\n') {
            ++i;
        } else if (c == '\n') {
            end_record();
            ++line;
            current.line = line;
            at_field_start = true;
            ++i;
        } else {
            field.push_back(c);
            at_field_start = false;
            ++i;
        }
    }
    if (!field.empty() || !current.fields.empty()) end_record();
    return records;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(fields[i]);
    }
    return out;
}

}  // namespace satd::csv
