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

#include "mignow/csv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mignow/error.h"

namespace mignow {
namespace {

std::string TrimCarriageReturn(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

void AppendField(std::string& out, std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

}  // namespace

CsvTable CsvTable::Parse(std::string_view text, const std::string& source) {
  CsvTable table;
  table.source_ = source;

  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_has_content = false;
  std::size_t line = 1;
  std::size_t row_line = 1;

  auto end_row = [&]() {
    row.push_back(TrimCarriageReturn(std::move(field)));
    field.clear();
    if (row_has_content || row.size() > 1 || !row.front().empty()) {
      rows.push_back(std::move(row));
      lines.push_back(row_line);
    }
    row.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_has_content = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        break;
      case '\n':
        end_row();
        ++line;
        row_line = line;
        break;
      default:
        field += c;
    }
  }
  if (in_quotes) {
    throw InputError(source + ":" + std::to_string(row_line) +
                     ": unterminated quoted field");
  }
  if (!field.empty() || !row.empty()) end_row();

  if (rows.empty()) {
    throw InputError(source + ": missing CSV header");
  }
  table.header_ = std::move(rows.front());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != table.header_.size()) {
      throw InputError(source + ":" + std::to_string(lines[r]) + ": expected " +
                       std::to_string(table.header_.size()) + " fields, got " +
                       std::to_string(rows[r].size()));
    }
    table.records_.push_back({lines[r], std::move(rows[r])});
  }
  return table;
}

CsvTable CsvTable::Read(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.string());
}

void CsvTable::RequireColumns(const std::vector<std::string>& names) const {
  std::string missing;
  for (const std::string& name : names) {
    if (!ColumnIndex(name)) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    }
  }
  if (!missing.empty()) {
    throw InputError(source_ + ": missing column(s): " + missing);
  }
}

std::optional<std::size_t> CsvTable::ColumnIndex(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  return std::nullopt;
}

const std::string& CsvTable::Field(const Record& record,
                                   std::string_view column) const {
  auto index = ColumnIndex(column);
  if (!index) {
    throw InputError(source_ + ": missing column " + std::string(column));
  }
  return record.fields[*index];
}

std::string CsvTable::Where(const Record& record) const {
  return source_ + ":" + std::to_string(record.line);
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // Folds -0 into 0.
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::optional<std::int64_t> ParseInt(std::string_view text) {
  std::int64_t value = 0;
  if (text.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<double> ParseReal(std::string_view text) {
  double value = 0.0;
  if (text.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

CsvWriter::CsvWriter(const std::vector<std::string>& header)
    : width_(header.size()) {
  Row(header);
}

CsvWriter& CsvWriter::Row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) {
    throw InvariantError("CSV row has " + std::to_string(fields.size()) +
                         " fields, header has " + std::to_string(width_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) text_ += ',';
    AppendField(text_, fields[i]);
  }
  text_ += '\n';
  return *this;
}

void CsvWriter::Save(const std::filesystem::path& path) const {
  WriteFile(path, text_);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace mignow
