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

#include "icar/snapshot.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "icar/errors.hpp"
#include "icar/normalize.hpp"

namespace icar {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string id_text(const json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number()) return value.dump();
  throw ParseError("snapshot " + where + ": expected an id string but found " +
                   std::string(value.type_name()));
}

}  // namespace

KnowledgeSchema schema_for_variant(std::string_view variant) {
  if (variant.empty() || variant == "icar") return build_icar_schema();
  if (variant == "icar-base") return build_base_schema();
  if (variant == "icar+importance") return with_importance(build_icar_schema());
  throw SchemaMismatchError("unknown schema variant '" + std::string(variant) +
                            "'");
}

std::string column_name(const KnowledgeSchema& schema, const ArrowDecl& arrow) {
  if (schema.unique_arrow(arrow.label, arrow.src)) return arrow.label;
  return arrow.label + ":" + arrow.tgt;
}

std::optional<ArrowDecl> resolve_column(const KnowledgeSchema& schema,
                                        std::string_view table,
                                        std::string_view column) {
  if (auto colon = column.find(':'); colon != std::string_view::npos) {
    ArrowDecl a{std::string(column.substr(0, colon)), VertexName(table),
                VertexName(column.substr(colon + 1))};
    if (schema.has_arrow(a)) return a;
    return std::nullopt;
  }
  return schema.unique_arrow(column, table);
}

Snapshot parse_snapshot(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("snapshot is not valid JSON at " +
                     line_col(json_text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                     e.what());
  }
  if (!doc.is_object()) throw ParseError("snapshot: top level must be an object");

  Snapshot snap;
  auto version = doc.find("schemaVersion");
  if (version == doc.end() || !version->is_number_integer())
    throw ParseError("snapshot: missing integer 'schemaVersion'");
  snap.schema_version = version->get<int>();
  if (snap.schema_version != kSnapshotSchemaVersion)
    throw ParseError("snapshot: unsupported schemaVersion " +
                     std::to_string(snap.schema_version));
  if (auto variant = doc.find("schema"); variant != doc.end()) {
    if (!variant->is_string()) throw ParseError("snapshot: 'schema' must be a string");
    snap.schema_variant = variant->get<std::string>();
  }

  auto tables = doc.find("tables");
  if (tables == doc.end() || !tables->is_object())
    throw ParseError("snapshot: missing object 'tables'");
  for (const auto& [table, rows] : tables->items()) {
    const std::string where = "tables." + table;
    if (!rows.is_array()) throw ParseError("snapshot " + where + ": expected an array");
    auto& out_rows = snap.tables[table];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      const std::string row_where = where + "[" + std::to_string(r) + "]";
      if (!row.is_object())
        throw ParseError("snapshot " + row_where + ": expected an object");
      auto row_id = row.find("id");
      if (row_id == row.end())
        throw ParseError("snapshot " + row_where + ": missing 'id'");
      SnapshotRow out{id_text(*row_id, row_where + ".id"), {}};
      for (const auto& [column, values] : row.items()) {
        if (column == "id") continue;
        const std::string col_where = row_where + "." + column;
        auto& ids = out.columns[column];
        if (values.is_array()) {
          for (std::size_t i = 0; i < values.size(); ++i)
            ids.push_back(
                id_text(values[i], col_where + "[" + std::to_string(i) + "]"));
        } else {
          ids.push_back(id_text(values, col_where));
        }
      }
      out_rows.push_back(std::move(out));
    }
  }
  return snap;
}

std::string serialize_snapshot(const Snapshot& snapshot) {
  ordered_json doc;
  doc["schemaVersion"] = snapshot.schema_version;
  if (!snapshot.schema_variant.empty()) doc["schema"] = snapshot.schema_variant;
  ordered_json tables = ordered_json::object();
  for (const auto& [table, rows] : snapshot.tables) {
    std::vector<const SnapshotRow*> sorted;
    for (const auto& r : rows) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](const SnapshotRow* a, const SnapshotRow* b) { return a->id < b->id; });
    ordered_json out_rows = ordered_json::array();
    for (const SnapshotRow* r : sorted) {
      ordered_json row;
      row["id"] = r->id;
      for (const auto& [column, ids] : r->columns) {
        if (ids.empty()) continue;
        std::vector<std::string> values(ids);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        row[column] = values;
      }
      out_rows.push_back(std::move(row));
    }
    tables[table] = std::move(out_rows);
  }
  doc["tables"] = std::move(tables);
  return doc.dump(2) + "\n";
}

LoadResult snapshot_to_instance(const Snapshot& snapshot,
                                const LoadOptions& options) {
  std::string variant = snapshot.schema_variant;
  if (variant.empty() &&
      snapshot.tables.contains(VertexName(vertex::kImportance)))
    variant = "icar+importance";
  auto schema =
      std::make_shared<const KnowledgeSchema>(schema_for_variant(variant));

  auto normalize = [](std::string_view ns, const std::string& raw,
                      const std::string& where) {
    try {
      return normalize_id(ns, raw);
    } catch (const NormalizationError& e) {
      throw ParseError("snapshot " + where + ": " + e.what());
    }
  };

  // First pass: tables, so that references can be resolved in any order.
  std::map<VertexName, std::set<std::string>> keys;
  for (const auto& [table, rows] : snapshot.tables) {
    if (!schema->has_vertex(table))
      throw SchemaMismatchError("snapshot table '" + table +
                                "' is not a vertex of schema '" +
                                schema->name() + "'");
    auto& table_keys = keys[table];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string where = "tables." + table + "[" + std::to_string(r) + "]";
      std::string key = normalize(table, rows[r].id, where + ".id");
      if (!table_keys.insert(key).second)
        throw ParseError("snapshot " + where + ": duplicate id '" + key + "'");
    }
  }

  InstanceBuilder builder(schema);
  for (const auto& [table, table_keys] : keys)
    for (const auto& key : table_keys) builder.add_row(table, key);

  std::size_t dropped = 0;
  for (const auto& [table, rows] : snapshot.tables) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string where = "tables." + table + "[" + std::to_string(r) + "]";
      const std::string src = normalize(table, rows[r].id, where + ".id");
      for (const auto& [column, ids] : rows[r].columns) {
        auto arrow = resolve_column(*schema, table, column);
        if (!arrow)
          throw SchemaMismatchError("snapshot " + where + ": unknown column '" +
                                    column + "' for table '" + table + "'");
        for (std::size_t i = 0; i < ids.size(); ++i) {
          const std::string tgt =
              normalize(arrow->tgt, ids[i],
                        where + "." + column + "[" + std::to_string(i) + "]");
          if (!keys[arrow->tgt].contains(tgt)) {
            if (!options.permissive)
              throw IntegrityError("snapshot " + where + "." + column +
                                   " references " + arrow->tgt + " id '" + tgt +
                                   "' which has no row");
            ++dropped;
            continue;
          }
          builder.add_pair(*arrow, src, tgt);
        }
      }
    }
  }
  return LoadResult{std::move(builder).build(), dropped};
}

Snapshot instance_to_snapshot(const Instance& inst) {
  const KnowledgeSchema& schema = inst.schema();
  Snapshot snap;
  if (schema.name() != "icar") snap.schema_variant = schema.name();

  std::map<VertexName, std::map<std::string, SnapshotRow>> rows;
  for (const auto& v : schema.vertices()) {
    auto& table_rows = rows[v];
    for (const auto& key : inst.table(v)) table_rows[key].id = key;
  }
  for (const auto& a : schema.arrows()) {
    const std::string column = column_name(schema, a);
    for (const auto& [s, t] : inst.relation(a)) {
      if (s.ns != a.src || t.ns != a.tgt)
        throw InputError("pair (" + s.to_string() + ", " + t.to_string() +
                         ") lies outside arrow " + a.to_string());
      if (!inst.contains(s) || !inst.contains(t))
        throw IntegrityError("pair (" + s.to_string() + ", " + t.to_string() +
                             ") of " + a.to_string() + " has a dangling endpoint");
      rows[a.src][s.key].columns[column].push_back(t.key);
    }
  }
  for (auto& [v, table_rows] : rows) {
    auto& out = snap.tables[v];
    for (auto& [key, row] : table_rows) out.push_back(std::move(row));
  }
  return snap;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LoadResult load_snapshot(const std::filesystem::path& path,
                         const LoadOptions& options) {
  const std::string text = read_text_file(path);
  try {
    return snapshot_to_instance(parse_snapshot(text), options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_snapshot(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << serialize_snapshot(instance_to_snapshot(inst));
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

}  // namespace icar
