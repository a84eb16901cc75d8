// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace satd::csv {

struct Record {
    std::vector<std::string> fields;
    std::size_t line = 0;  // 1-based line on which the record starts
};

/// Parses RFC 4180 text: comma separated, fields optionally double-quoted,
/// "" escapes a quote, quoted fields may span lines, LF or CRLF endings.
/// A leading UTF-8 byte order mark is skipped. Blank lines are ignored.
/// Throws DataError on an unterminated quote or text after a closing quote.
std::vector<Record> parse(std::string_view text);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace satd::csv
