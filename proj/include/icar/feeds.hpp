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

#ifndef ICAR_FEEDS_HPP_
#define ICAR_FEEDS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "icar/schema.hpp"
#include "icar/snapshot.hpp"

namespace icar {

// Collects rows and links from one or more adapters before they become a
// Snapshot. Keys are normalized by the caller.
class SnapshotAccumulator {
 public:
  explicit SnapshotAccumulator(
      std::shared_ptr<const KnowledgeSchema> schema =
          std::make_shared<const KnowledgeSchema>(build_icar_schema()));

  void add_row(std::string_view table, const std::string& key);
  // Adds the source row as well; the target row is left to close_references.
  void add_link(const ArrowDecl& arrow, const std::string& src_key,
                const std::string& tgt_key);
  void merge(const SnapshotAccumulator& other);

  // Adds every referenced-but-unlisted id as a bare row; returns how many.
  std::size_t close_references();

  std::size_t row_count(std::string_view table) const;
  bool has_row(std::string_view table, const std::string& key) const;
  // Targets of `arrow` from `src_key` (empty when none).
  std::set<std::string> links(const ArrowDecl& arrow,
                              const std::string& src_key) const;

  Snapshot to_snapshot() const;

 private:
  std::shared_ptr<const KnowledgeSchema> schema_;
  std::map<VertexName, std::map<std::string, std::map<ArrowDecl, std::set<std::string>>>>
      tables_;
};

// Outcome of one adapter over one file.
struct FeedDiagnostics {
  std::string feed;  // "nvd-cve", "cwe", "capec", "attack", "cpe"
  std::string source;
  std::size_t records = 0;    // records read into the snapshot
  std::size_t malformed = 0;  // records or fields rejected as malformed
  std::size_t skipped = 0;    // well-formed but deliberately ignored
                              // (revoked/deprecated ATT&CK objects,
                              // placeholder CWE ids)
  bool file_error = false;    // the file could not be read or parsed at all
  std::vector<std::string> messages;
};

// Adapters over in-memory documents. Blank input yields zero records.
// NVD CVE JSON: API 2.0 ("vulnerabilities") or legacy 1.1 ("CVE_Items");
// CVSS base score preference v3.1, v3.0, v2; CPE URIs from configuration
// nodes flagged vulnerable (ranges are not expanded).
FeedDiagnostics read_nvd_cves(std::string_view text, SnapshotAccumulator& out);
// CWE catalog XML: Weakness ids, ChildOf/ParentOf relations (both arrows
// are derived from either nature) and Related_Attack_Pattern ids.
FeedDiagnostics read_cwe_catalog(std::string_view text, SnapshotAccumulator& out);
// CAPEC catalog XML: Attack_Pattern ids, ChildOf/ParentOf, Related_Weakness
// ids and ATTACK taxonomy mappings (Entry_ID).
FeedDiagnostics read_capec_catalog(std::string_view text, SnapshotAccumulator& out);
// ATT&CK STIX 2.1 bundle: enterprise techniques and tactics, tactic
// membership from kill-chain phases, subtechnique-of relationships.
FeedDiagnostics read_attack_stix(std::string_view text, SnapshotAccumulator& out);
// CPE dictionary XML: cpe23-item names (falling back to cpe-item names).
FeedDiagnostics read_cpe_dictionary(std::string_view text, SnapshotAccumulator& out);

struct FeedPaths {
  std::optional<std::filesystem::path> cve;
  std::optional<std::filesystem::path> cwe;
  std::optional<std::filesystem::path> capec;
  std::optional<std::filesystem::path> attack;
  std::optional<std::filesystem::path> cpe;
};

struct FeedImport {
  Snapshot snapshot;
  std::vector<FeedDiagnostics> diagnostics;
  std::size_t closure_rows = 0;

  bool has_file_errors() const;
};

// Runs the adapters for every given path (concurrently), merges their
// output, closes dangling references with bare rows and emits a snapshot
// over the ICAR schema with an empty DB_X table.
FeedImport import_feeds(const FeedPaths& paths);

}  // namespace icar

#endif  // ICAR_FEEDS_HPP_
