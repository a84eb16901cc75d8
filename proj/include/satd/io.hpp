// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The satd-toolkit Authors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace satd::io {

/// Reads a whole file; throws DataError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Splits text into lines, dropping a trailing '\r' from each line and the
/// empty piece after a final newline.
std::vector<std::string> split_lines(std::string_view text);

/// Writes to a sibling temporary file and renames it over the target, so a
/// reader never observes a partially written file. Parent directories are
/// created. Throws RunError on I/O failure.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

std::string_view trim(std::string_view s) noexcept;

}  // namespace satd::io
