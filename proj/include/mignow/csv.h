/*
 * Copyright 2026 The Mignow Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MIGNOW_CSV_H_
#define MIGNOW_CSV_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mignow {

// A parsed CSV table. Fields are addressed by header name; every record
// remembers its 1-based line number for error messages.
class CsvTable {
 public:
  struct Record {
    std::size_t line = 0;
    std::vector<std::string> fields;
  };

  // Parses RFC-4180 style text (quoted fields, "" escapes). Blank lines are
  // skipped. Throws InputError on ragged rows or an unterminated quote.
  static CsvTable Parse(std::string_view text, const std::string& source);
  static CsvTable Read(const std::filesystem::path& path);

  const std::string& source() const { return source_; }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<Record>& records() const { return records_; }

  // Throws InputError listing any of `names` absent from the header.
  void RequireColumns(const std::vector<std::string>& names) const;
  std::optional<std::size_t> ColumnIndex(std::string_view name) const;

  const std::string& Field(const Record& record, std::string_view column) const;

  // "<source>:<line>: <message>"
  std::string Where(const Record& record) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<Record> records_;
};

// Shortest decimal text that round-trips to the same double. Infinities
// render as "inf"/"-inf" and NaN as "nan".
std::string FormatDouble(double value);

std::optional<std::int64_t> ParseInt(std::string_view text);
std::optional<double> ParseReal(std::string_view text);

// Builds CSV text row by row; quotes fields that need it.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);

  CsvWriter& Row(const std::vector<std::string>& fields);
  const std::string& text() const { return text_; }

  // Writes the text to `path`, creating parent directories.
  void Save(const std::filesystem::path& path) const;

 private:
  std::size_t width_;
  std::string text_;
};

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace mignow

#endif  // MIGNOW_CSV_H_
