// Copyright (c) 2026 FDIK Contributors
// Distributed under the terms of the Apache-2.0 License
// (obtainable from http://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fdik {

/// Shortest decimal string that round-trips the double exactly
/// (std::to_chars). Locale-independent, so emitted files are byte-stable.
std::string format_double(double x);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Parsed CSV with a mandatory header row. Cells are kept as strings;
/// callers convert the columns they need.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
};

CsvTable read_csv(const std::filesystem::path& path);

/// Parses a declarative `key = value` document ('#' starts a comment).
/// Later assignments win.
std::map<std::string, std::string> parse_key_values(const std::string& text);

}  // namespace fdik
