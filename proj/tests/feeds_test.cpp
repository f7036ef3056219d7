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

#include <filesystem>

#include <gtest/gtest.h>

#include "icar/feeds.hpp"
#include "icar/queries.hpp"
#include "icar/snapshot.hpp"
#include "icar/validation.hpp"

namespace icar {
namespace {

std::filesystem::path data(const char* name) {
  return std::filesystem::path(ICAR_TEST_DATA_DIR) / name;
}

std::string text(const char* name) { return read_text_file(data(name)); }

using Strings = std::set<std::string>;

TEST(NvdFeed, Api2) {
  SnapshotAccumulator acc;
  const FeedDiagnostics d = read_nvd_cves(text("nvd_api2.json"), acc);
  EXPECT_EQ(d.records, 3u);
  EXPECT_EQ(d.malformed, 1u);
  EXPECT_EQ(d.skipped, 1u);
  EXPECT_FALSE(d.file_error);
  const ArrowDecl cwe = arrow("Has", "CVE", "CWE");
  const ArrowDecl cpe = arrow("Has", "CVE", "CPE");
  const ArrowDecl cvss = arrow("Has", "CVE", "CVSS");
  EXPECT_EQ(acc.links(cwe, "CVE-2006-5268"), Strings{"CWE-287"});
  EXPECT_EQ(acc.links(cpe, "CVE-2006-5268"),
            Strings{"cpe:2.3:a:novell:client:4.91:*:*:*:*:*:*:*"});
  EXPECT_EQ(acc.links(cvss, "CVE-2006-5268"), Strings{"7.2"});
  EXPECT_EQ(acc.links(cwe, "CVE-2023-28371"), Strings{"CWE-22"});
  EXPECT_EQ(acc.links(cpe, "CVE-2023-28371"),
            Strings{"cpe:2.3:a:stellarium:stellarium:*:*:*:*:*:*:*:*"});
  EXPECT_EQ(acc.links(cvss, "CVE-2023-28371"), Strings{"4.3"});
  EXPECT_EQ(acc.links(cvss, "CVE-2023-21038"), Strings{"9.5"});
  EXPECT_TRUE(acc.links(cwe, "CVE-2023-21038").empty());
}

TEST(NvdFeed, Legacy) {
  SnapshotAccumulator acc;
  const FeedDiagnostics d = read_nvd_cves(text("nvd_legacy.json"), acc);
  EXPECT_EQ(d.records, 2u);
  EXPECT_EQ(acc.links(arrow("Has", "CVE", "CWE"), "CVE-2023-1684"), Strings{"CWE-434"});
  EXPECT_EQ(acc.links(arrow("Has", "CVE", "CVSS"), "CVE-2023-1684"), Strings{"2.1"});
  EXPECT_EQ(acc.links(arrow("Has", "CVE", "CVSS"), "CVE-2023-21032"), Strings{"4.1"});
  EXPECT_EQ(acc.links(arrow("Has", "CVE", "CPE"), "CVE-2023-1684").size(), 1u);
}

TEST(CweFeed, ParentChildBothWays) {
  SnapshotAccumulator acc;
  const FeedDiagnostics d = read_cwe_catalog(text("cwe.xml"), acc);
  EXPECT_EQ(d.records, 5u);
  EXPECT_EQ(d.malformed, 1u);
  const ArrowDecl child = arrow("isChildOf", "CWE", "CWE");
  const ArrowDecl parent = arrow("isParentOf", "CWE", "CWE");
  EXPECT_EQ(acc.links(child, "CWE-287"), Strings{"CWE-284"});
  EXPECT_EQ(acc.links(parent, "CWE-284"), Strings{"CWE-287"});
  EXPECT_EQ(acc.links(parent, "CWE-287"),
            (Strings{"CWE-1390", "CWE-295", "CWE-306", "CWE-645"}));
  EXPECT_EQ(acc.links(arrow("Has", "CWE", "CAPEC"), "CWE-287").size(), 5u);
}

TEST(CapecFeed, WeaknessesAndTechniques) {
  SnapshotAccumulator acc;
  const FeedDiagnostics d = read_capec_catalog(text("capec.xml"), acc);
  EXPECT_EQ(d.records, 5u);
  EXPECT_EQ(acc.links(arrow("Has", "CAPEC", "Technique"), "CAPEC-593"),
            (Strings{"T1185", "T1550.001", "T1563"}));
  EXPECT_EQ(acc.links(arrow("Has", "CAPEC", "Technique"), "CAPEC-94"), Strings{"T1557"});
  EXPECT_EQ(acc.links(arrow("Has", "CAPEC", "CWE"), "CAPEC-650"), Strings{"CWE-287"});
  EXPECT_EQ(acc.links(arrow("isChildOf", "CAPEC", "CAPEC"), "CAPEC-57"), Strings{"CAPEC-94"});
  EXPECT_EQ(acc.links(arrow("isParentOf", "CAPEC", "CAPEC"), "CAPEC-94"), Strings{"CAPEC-57"});
}

TEST(AttackFeed, TechniquesTacticsAndSubTechniques) {
  SnapshotAccumulator acc;
  const FeedDiagnostics d = read_attack_stix(text("attack.json"), acc);
  EXPECT_EQ(d.skipped, 3u);  // revoked, deprecated, relationship to deprecated
  EXPECT_EQ(d.malformed, 0u);
  EXPECT_FALSE(acc.has_row("Technique", "T1073"));
  EXPECT_FALSE(acc.has_row("Technique", "T1064"));
  const ArrowDecl sub = arrow("isSubTechniqueOf", "Technique", "Technique");
  EXPECT_EQ(acc.links(sub, "T1550.001"), Strings{"T1550"});
  EXPECT_EQ(acc.links(sub, "T1505.003"), Strings{"T1505"});
  const ArrowDecl tactic = arrow("accomplishesTactic", "Technique", "Tactic");
  EXPECT_EQ(acc.links(tactic, "T1134"), Strings{"TA0004"});
  EXPECT_EQ(acc.links(tactic, "T1040"), Strings{"TA0006"});
  EXPECT_EQ(acc.row_count("Tactic"), 3u);
}

TEST(CpeFeed, PrefersCpe23Names) {
  SnapshotAccumulator acc;
  const FeedDiagnostics d = read_cpe_dictionary(text("cpe.xml"), acc);
  EXPECT_EQ(d.records, 2u);
  EXPECT_EQ(d.malformed, 1u);
  EXPECT_TRUE(acc.has_row("CPE", "cpe:2.3:a:novell:client:4.91:*:*:*:*:*:*:*"));
  EXPECT_TRUE(acc.has_row("CPE", "cpe:/a:stellarium:stellarium:1.2"));
}

TEST(Feeds, BlankAndBrokenInputs) {
  SnapshotAccumulator acc;
  EXPECT_EQ(read_nvd_cves(text("empty.json"), acc).records, 0u);
  EXPECT_FALSE(read_cwe_catalog(text("blank.xml"), acc).file_error);
  EXPECT_TRUE(read_nvd_cves(text("truncated.json"), acc).file_error);
  EXPECT_TRUE(read_cwe_catalog(text("truncated.xml"), acc).file_error);
  EXPECT_TRUE(read_attack_stix("{\"type\": \"bundle\"}", acc).file_error);
  EXPECT_TRUE(read_nvd_cves("{\"other\": []}", acc).file_error);
  EXPECT_EQ(acc.row_count("CVE"), 0u);
}

TEST(Feeds, ImportBuildsQueryableSnapshot) {
  FeedPaths paths;
  paths.cve = data("nvd_api2.json");
  paths.cwe = data("cwe.xml");
  paths.capec = data("capec.xml");
  paths.attack = data("attack.json");
  paths.cpe = data("cpe.xml");
  const FeedImport imported = import_feeds(paths);
  ASSERT_FALSE(imported.has_file_errors());
  EXPECT_EQ(imported.diagnostics.size(), 5u);
  EXPECT_GT(imported.closure_rows, 0u);
  EXPECT_TRUE(imported.snapshot.schema_variant.empty());

  const Instance inst = snapshot_to_instance(imported.snapshot).instance;
  EXPECT_TRUE(inst.table("DB_X").empty());
  EXPECT_EQ(check_referential_integrity(inst).integrity_violation_count, 0u);
  EXPECT_EQ(check_facts(inst).fact_violation_count, 0u);

  const CosieveResult techniques = differential_cosieve(inst, "CVE-2006-5268", Level::kTechnique);
  Strings keys;
  for (const auto& t : techniques.target_ids) keys.insert(t.key);
  EXPECT_EQ(keys, (Strings{"T1040", "T1134", "T1185", "T1505", "T1550", "T1557", "T1563"}));

  const CosieveResult tactics = differential_cosieve(inst, "CVE-2006-5268", Level::kTactic);
  keys.clear();
  for (const auto& t : tactics.target_ids) keys.insert(t.key);
  EXPECT_EQ(keys, (Strings{"TA0004", "TA0006", "TA0008"}));
}

TEST(Feeds, MissingFileIsAFileError) {
  FeedPaths paths;
  paths.cwe = data("no_such_file.xml");
  const FeedImport imported = import_feeds(paths);
  EXPECT_TRUE(imported.has_file_errors());
  EXPECT_EQ(imported.diagnostics.at(0).feed, "cwe");
}

}  // namespace
}  // namespace icar
