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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "icar/errors.hpp"
#include "icar/migration.hpp"
#include "icar/queries.hpp"
#include "oracles.hpp"

namespace icar {
namespace {

using testing::GraphBuilder;
using Keys = std::set<std::string>;

Keys keys(const IdSet& ids) {
  Keys out;
  for (const auto& e : ids) out.insert(e.key);
  return out;
}

Decimal d(const char* s) { return Decimal::parse(s); }

Instance with_assets(const Instance& knowledge, std::vector<AssetRow> assets) {
  return merge_cmdb(knowledge, assets).instance;
}

TEST(Pullback, RequiresAssets) {
  const Instance base = InstanceBuilder(build_base_schema()).build();
  EXPECT_THROW(pullback_cpe(base), QueryError);
  EXPECT_THROW(affected_assets(base), QueryError);
  EXPECT_TRUE(pullback_cpe(testing::catalog_instance()).pairs.empty());
}

TEST(Pullback, SharedCpeFansOut) {
  GraphBuilder g;
  g.has("DB_X", "VM008", "CPE", "u").has("DB_X", "VM009", "CPE", "u");
  g.has("DB_X", "LB001", "CPE", "w").row("DB_X", "NOCPE");
  g.has("CVE", "CVE-2023-0001", "CPE", "u").has("CVE", "CVE-2023-0002", "CPE", "u");
  g.has("CVE", "CVE-2023-0002", "CPE", "v");
  const Instance inst = g.build();
  const CpePullback pb = pullback_cpe(inst);
  EXPECT_EQ(pb.pairs, testing::oracle::pullback(inst));
  EXPECT_EQ(pb.pairs.size(), 4u);
  EXPECT_EQ(keys(affected_assets(inst)), (Keys{"VM008", "VM009"}));
  EXPECT_EQ(keys(is_vulnerabilities(inst)), (Keys{"CVE-2023-0001", "CVE-2023-0002"}));
  EXPECT_EQ(keys(vuln_assets(inst, "CVE-2023-0002")), (Keys{"VM008", "VM009"}));
  EXPECT_TRUE(asset_vulnerabilities(inst, "NOCPE").empty());
  EXPECT_TRUE(asset_vulnerabilities(inst, "LB001").empty());
  EXPECT_THROW(asset_vulnerabilities(inst, "ZZ"), QueryError);
  EXPECT_THROW(vuln_assets(inst, "CVE-1999-0001"), QueryError);
}

TEST(Pullback, Gitlab) {
  const Instance inst = testing::gitlab_instance();
  Keys expected;
  for (const auto& c : testing::gitlab_cves()) expected.insert(c.id);
  EXPECT_EQ(keys(is_vulnerabilities(inst)), expected);
  EXPECT_EQ(keys(asset_vulnerabilities(inst, testing::kGitlabAsset)), expected);
  EXPECT_EQ(keys(affected_assets(inst)), Keys{testing::kGitlabAsset});
}

TEST(Pullback, NaCpeCveHasNoAssets) {
  const Instance inst = with_assets(testing::inventory_knowledge(), testing::inventory_assets());
  EXPECT_TRUE(vuln_assets(inst, "CVE-2023-21038").empty());
  EXPECT_TRUE(is_vulnerabilities(inst).empty());
}

TEST(ByScore, Catalog) {
  const Instance inst = testing::catalog_instance();
  EXPECT_EQ(keys(vulns_by_score(inst, d("9.0"), d("10.0"))), Keys{"CVE-2023-21038"});
  EXPECT_EQ(keys(vulns_by_score(inst, d("0.0"), d("10.0"))),
            (Keys{"CVE-2023-1684", "CVE-2023-21032", "CVE-2023-21038", "CVE-2023-21039",
                  "CVE-2023-28371"}));
  EXPECT_TRUE(vulns_by_score(inst, d("5.0"), d("5.0")).empty());
  EXPECT_EQ(keys(vulns_by_score(inst, d("2.1"), d("2.1"))),
            (Keys{"CVE-2023-1684", "CVE-2023-21039"}));
  EXPECT_EQ(keys(vulns_by_score(inst, d("4.1"), d("4.3"))),
            (Keys{"CVE-2023-21032", "CVE-2023-28371"}));
}

TEST(ByScore, InvalidInterval) {
  const Instance inst = testing::catalog_instance();
  EXPECT_THROW(vulns_by_score(inst, d("5.0"), d("4.0")), InputError);
  EXPECT_THROW(vulns_by_score(inst, d("-0.1"), d("4.0")), InputError);
  EXPECT_THROW(vulns_by_score(inst, d("0.0"), d("10.1")), InputError);
}

TEST(AttackSurface, Examples) {
  EXPECT_EQ(attack_surface(with_assets(testing::inventory_knowledge(), testing::inventory_assets()),
                           false)
                .total,
            Decimal());

  GraphBuilder g;
  g.has("DB_X", "A1", "CPE", "stellarium:stellarium");
  g.has("CVE", "CVE-2023-28371", "CPE", "stellarium:stellarium").has("CVE", "CVE-2023-28371", "CVSS", "4.3");
  g.has("CVE", "CVE-2023-21038", "CPE", "stellarium:stellarium").has("CVE", "CVE-2023-21038", "CVSS", "9.5");
  const SurfaceReport r = attack_surface(g.build(), false);
  EXPECT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.total, d("13.8"));

  const Instance weighted = merge_cmdb(g.build(), {AssetRow{"A1", "stellarium:stellarium", d("0.5"), 2}})
                                .instance;
  EXPECT_EQ(attack_surface(weighted, true).total, d("6.9"));
  EXPECT_EQ(attack_surface(weighted, false).total, d("13.8"));
}

TEST(AttackSurface, GitlabSumIsExact) {
  Decimal expected;
  std::int64_t tenths = 0;
  for (const auto& c : testing::gitlab_cves()) {
    expected += d(c.score);
    const std::string s = c.score;
    tenths += std::stoi(s.substr(0, s.find('.'))) * 10 + (s.back() - '0');
  }
  const SurfaceReport r = attack_surface(testing::gitlab_instance(), false);
  EXPECT_EQ(r.total, expected);
  EXPECT_EQ(r.total.units(), tenths * (Decimal::kOne / 10));
  EXPECT_EQ(r.total.to_string(), "24.9");
  EXPECT_EQ(attack_surface(testing::gitlab_instance("1.0"), true).total, r.total);
  EXPECT_EQ(attack_surface(testing::gitlab_instance("0.123456"), true).total,
            d("3.0740544"));
}

TEST(AttackSurface, ConflictingWeights) {
  GraphBuilder g(with_importance(build_icar_schema()));
  g.has("DB_X", "A1", "CPE", "c").has("DB_X", "A1", "IMPT_X", "0.5").has("DB_X", "A1", "IMPT_X", "2.0");
  g.has("CVE", "CVE-2023-0001", "CPE", "c").has("CVE", "CVE-2023-0001", "CVSS", "5.0");
  EXPECT_THROW(attack_surface(g.build(), true), QueryError);
  EXPECT_EQ(attack_surface(g.build(), false).total, d("5.0"));
}

TEST(Sieve, ImpactGolden) {
  const Instance inst = testing::impact_instance();
  const auto expected = testing::impact_expected_cves();
  const Keys want(expected.begin(), expected.end());
  const SieveResult t = differential_sieve(inst, "T1499", Level::kTechnique);
  EXPECT_EQ(keys(t.cve_ids), want);
  const SieveResult ta = differential_sieve(inst, "TA0040", Level::kTactic);
  EXPECT_EQ(keys(ta.cve_ids), want);
  for (const auto& c : t.cve_ids) {
    EXPECT_TRUE(testing::oracle::witness_valid(inst, t.witnesses.at(c), c, t.anchor));
    EXPECT_TRUE(testing::oracle::witness_valid(inst, ta.witnesses.at(c), c, ta.anchor));
  }
}

TEST(Sieve, WitnessIsShortestThenSmallest) {
  const Instance inst = testing::impact_instance();
  const SieveResult t = differential_sieve(inst, "T1499", Level::kTechnique);
  // CWE-770 reaches T1499 through CAPEC-125 directly or CAPEC-130 via the
  // sub-technique; the shorter chain wins.
  const Witness& w = t.witnesses.at(id("CVE", "CVE-2023-1544"));
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[1].tgt.key, "CAPEC-125");
  // CWE-404 has CAPEC-125 and CAPEC-131 at equal length; the smaller id wins.
  EXPECT_EQ(t.witnesses.at(id("CVE", "CVE-2023-0412"))[1].tgt.key, "CAPEC-125");
  // CWE-1325 only reaches it through the sub-technique.
  const Witness& sub = t.witnesses.at(id("CVE", "CVE-2021-43174"));
  ASSERT_EQ(sub.size(), 4u);
  EXPECT_EQ(sub[3].label, "isSubTechniqueOf");
}

TEST(Sieve, SubTechniqueAnchorAndEmptyCases) {
  const Instance inst = testing::impact_instance();
  EXPECT_EQ(keys(differential_sieve(inst, "T1499.003", Level::kTechnique).cve_ids),
            (Keys{"CVE-2021-43174", "CVE-2023-1544", "CVE-2023-20047", "CVE-2023-20067",
                  "CVE-2023-22323", "CVE-2023-28968", "CVE-2023-0412", "CVE-2023-0413",
                  "CVE-2023-0907", "CVE-2023-0936"}));
  GraphBuilder g;
  g.row("Technique", "T1000");
  EXPECT_TRUE(differential_sieve(g.build(), "T1000", Level::kTechnique).cve_ids.empty());
  EXPECT_THROW(differential_sieve(inst, "T9999", Level::kTechnique), QueryError);
  EXPECT_THROW(differential_sieve(inst, "TA0001", Level::kTactic), QueryError);
}

TEST(Cosieve, AuthBypassGolden) {
  const Instance inst = testing::auth_bypass_instance();
  const auto expected = testing::auth_bypass_expected_techniques();
  const CosieveResult r = differential_cosieve(inst, "CVE-2006-5268", Level::kTechnique);
  EXPECT_EQ(keys(r.target_ids), Keys(expected.begin(), expected.end()));
  for (const auto& t : r.target_ids)
    EXPECT_TRUE(testing::oracle::witness_valid(inst, r.witnesses.at(t), r.anchor, t));
  EXPECT_EQ(r.witnesses.at(id("Technique", "T1505")).back().label, "isSubTechniqueOf");
}

TEST(Cosieve, NoCweMeansNoTargets) {
  const Instance inst = testing::catalog_instance();
  EXPECT_TRUE(differential_cosieve(inst, "CVE-2023-21038", Level::kTechnique).target_ids.empty());
  EXPECT_THROW(differential_cosieve(inst, "CVE-2000-0001", Level::kTechnique), QueryError);
}

TEST(Cosieve, SingleChainTactic) {
  GraphBuilder g;
  g.has("CVE", "CVE-2023-0001", "CWE", "CWE-319").has("CWE", "CWE-319", "CAPEC", "CAPEC-65");
  g.has("CAPEC", "CAPEC-65", "Technique", "T1040");
  g.link("accomplishesTactic", "Technique", "T1040", "Tactic", "TA0009");
  const Instance inst = g.complete_back_references().build();
  const CosieveResult r = differential_cosieve(inst, "CVE-2023-0001", Level::kTactic);
  EXPECT_EQ(keys(r.target_ids), Keys{"TA0009"});
  EXPECT_EQ(r.target_ids, testing::oracle::cosieve(inst, id("CVE", "CVE-2023-0001"),
                                                   Level::kTactic, false));
  EXPECT_EQ(r.witnesses.begin()->second.size(), 4u);
}

TEST(Cosieve, ClosureFlagAddsParentHops) {
  GraphBuilder g;
  g.has("CVE", "CVE-2023-0001", "CWE", "CWE-295");
  g.link("isChildOf", "CWE", "CWE-295", "CWE", "CWE-287");
  g.has("CWE", "CWE-287", "CAPEC", "CAPEC-94").has("CAPEC", "CAPEC-94", "Technique", "T1557");
  const Instance inst = g.complete_back_references().build();
  EXPECT_TRUE(differential_cosieve(inst, "CVE-2023-0001", Level::kTechnique).target_ids.empty());
  const CosieveResult closed =
      differential_cosieve(inst, "CVE-2023-0001", Level::kTechnique, QueryOptions{true});
  EXPECT_EQ(keys(closed.target_ids), Keys{"T1557"});
  EXPECT_EQ(keys(differential_sieve(inst, "T1557", Level::kTechnique, QueryOptions{true}).cve_ids),
            Keys{"CVE-2023-0001"});
}

TEST(ThreatSurface, AuthBypassAndOverlap) {
  const Instance bypass = testing::auth_bypass_instance();
  InstanceBuilder b(bypass.schema_ptr());
  b.add_all(bypass);
  b.add_row("CPE", "cpe:2.3:a:novell:client:4.91:*:*:*:*:*:*:*");
  b.add_pair(arrow("Has", "CVE", "CPE"), "CVE-2006-5268", "cpe:2.3:a:novell:client:4.91:*:*:*:*:*:*:*");
  const Instance with_cpe = std::move(b).build();
  const Instance inst =
      with_assets(with_cpe, {AssetRow{"WS01", "cpe:2.3:a:novell:client:4.91:*:*:*:*:*:*:*",
                                      Decimal::from_int(1), 2}});
  const ThreatSurface t = threat_surface(inst, Level::kTechnique);
  EXPECT_EQ(t.total, 7u);
  EXPECT_EQ(t.supporting.size(), 7u);

  GraphBuilder two;
  two.has("DB_X", "A1", "CPE", "c");
  for (const char* c : {"CVE-2023-0001", "CVE-2023-0002"}) two.has("CVE", c, "CPE", "c");
  two.has("CVE", "CVE-2023-0001", "CWE", "CWE-1").has("CVE", "CVE-2023-0002", "CWE", "CWE-2");
  two.has("CWE", "CWE-1", "CAPEC", "CAPEC-1").has("CWE", "CWE-2", "CAPEC", "CAPEC-2");
  two.has("CAPEC", "CAPEC-1", "Technique", "T1001").has("CAPEC", "CAPEC-1", "Technique", "T1002");
  two.has("CAPEC", "CAPEC-2", "Technique", "T1002").has("CAPEC", "CAPEC-2", "Technique", "T1003");
  const ThreatSurface o = threat_surface(two.build(), Level::kTechnique);
  EXPECT_EQ(o.total, 3u);
  EXPECT_EQ(o.supporting.at(id("Technique", "T1002")).size(), 2u);
  EXPECT_EQ(o.supporting.at(id("Technique", "T1001")).size(), 1u);

  EXPECT_EQ(threat_surface(testing::gitlab_instance(), Level::kTechnique).total, 0u);
}

TEST(Level, ParseAndPrint) {
  EXPECT_EQ(parse_level("technique"), Level::kTechnique);
  EXPECT_EQ(parse_level("tactic"), Level::kTactic);
  EXPECT_EQ(to_string(Level::kTactic), "tactic");
  EXPECT_THROW(parse_level("procedure"), InputError);
}

}  // namespace
}  // namespace icar
