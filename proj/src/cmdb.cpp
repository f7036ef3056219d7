// Copyright 2026 The ICAR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "icar/cmdb.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "icar/errors.hpp"
#include "icar/normalize.hpp"
#include "icar/schema.hpp"
#include "icar/snapshot.hpp"

namespace icar {
namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return std::string(s);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

// Splits one record starting at `pos`, advancing past its line break.
// Quoted fields may span lines.
std::vector<std::string> next_record(std::string_view text, std::size_t& pos,
                                     std::size_t& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          field += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      ++line;
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw FormatError("CMDB line " + std::to_string(line) +
                                ": unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

std::vector<AssetRow> parse_cmdb(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::size_t pos = 0;
  std::size_t line = 1;
  std::optional<std::size_t> id_col;
  std::optional<std::size_t> cpe_col;
  std::optional<std::size_t> importance_col;

  // Header: first non-blank record.
  while (pos < text.size()) {
    const std::size_t header_line = line;
    auto header = next_record(text, pos, line);
    if (header.size() == 1 && trim(header[0]).empty()) continue;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const std::string name = upper(trim(header[i]));
      if (name == "ID" && !id_col) id_col = i;
      if (name == "CPE" && !cpe_col) cpe_col = i;
      if (name == "IMPORTANCE" && !importance_col) importance_col = i;
    }
    if (!id_col || !cpe_col)
      throw FormatError("CMDB line " + std::to_string(header_line) +
                        ": header must contain ID and CPE columns");
    break;
  }
  if (!id_col) throw FormatError("CMDB: missing header with ID and CPE columns");

  std::vector<AssetRow> rows;
  while (pos < text.size()) {
    const std::size_t row_line = line;
    auto fields = next_record(text, pos, line);
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    auto cell = [&](std::optional<std::size_t> col) {
      return col && *col < fields.size() ? trim(fields[*col]) : std::string();
    };
    AssetRow row;
    row.line = row_line;
    row.asset_id = cell(id_col);
    if (row.asset_id.empty())
      throw FormatError("CMDB line " + std::to_string(row_line) +
                        ": empty asset ID");
    const std::string cpe = cell(cpe_col);
    if (!cpe.empty()) row.cpe = normalize_id(vertex::kCpe, cpe);
    const std::string importance = cell(importance_col);
    if (!importance.empty()) {
      try {
        row.importance =
            Decimal::parse(normalize_id(vertex::kImportance, importance));
      } catch (const Error&) {
        throw FormatError("CMDB line " + std::to_string(row_line) +
                          ": invalid importance '" + importance + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<AssetRow> import_cmdb(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_cmdb(text);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace icar
