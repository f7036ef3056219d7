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

#ifndef ICAR_SNAPSHOT_HPP_
#define ICAR_SNAPSHOT_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icar/instance.hpp"
#include "icar/schema.hpp"

namespace icar {

inline constexpr int kSnapshotSchemaVersion = 1;

struct SnapshotRow {
  std::string id;
  // Column name -> referenced ids. Column names are arrow labels, qualified
  // as "label:Target" when the label alone is ambiguous for the table.
  std::map<std::string, std::vector<std::string>> columns;

  friend bool operator==(const SnapshotRow&, const SnapshotRow&) = default;
};

// Canonical on-disk form of an instance:
//
//   {"schemaVersion": 1,
//    "schema": "icar",                      (optional)
//    "tables": {"CWE": [{"id": "CWE-79", "Has": ["CAPEC-63"], ...}], ...}}
struct Snapshot {
  int schema_version = kSnapshotSchemaVersion;
  // Schema variant name: "icar-base", "icar" or "icar+importance". Empty
  // means "icar", or "icar+importance" when an IMPT_X table is present.
  std::string schema_variant;
  std::map<VertexName, std::vector<SnapshotRow>> tables;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

// Built-in schema named by a snapshot variant. Throws SchemaMismatchError
// for unknown names.
KnowledgeSchema schema_for_variant(std::string_view variant);

// Column name used for `arrow` in its source table.
std::string column_name(const KnowledgeSchema& schema, const ArrowDecl& arrow);

// Arrow addressed by `column` in table `table`, if any.
std::optional<ArrowDecl> resolve_column(const KnowledgeSchema& schema,
                                        std::string_view table,
                                        std::string_view column);

// Throws ParseError with line/column and element context.
Snapshot parse_snapshot(std::string_view json_text);

// Deterministic pretty-printed JSON (tables, rows and columns sorted).
std::string serialize_snapshot(const Snapshot& snapshot);

struct LoadOptions {
  // Drop pairs whose target row is missing instead of failing.
  bool permissive = false;
};

struct LoadResult {
  Instance instance;
  std::size_t dropped_pairs = 0;
};

// Normalizes every id and builds a frozen instance over the snapshot's
// schema variant. Throws SchemaMismatchError for unknown tables/columns,
// ParseError for duplicate or unnormalizable ids, and IntegrityError for
// dangling references unless options.permissive.
LoadResult snapshot_to_instance(const Snapshot& snapshot,
                                const LoadOptions& options = {});

// Throws IntegrityError if the instance holds dangling endpoints, and
// InputError for pairs outside their arrow's endpoint tables; neither can
// be expressed as snapshot rows.
Snapshot instance_to_snapshot(const Instance& inst);

LoadResult load_snapshot(const std::filesystem::path& path,
                         const LoadOptions& options = {});
void write_snapshot(const Instance& inst, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace icar

#endif  // ICAR_SNAPSHOT_HPP_
