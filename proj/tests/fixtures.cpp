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

#include "fixtures.hpp"

#include <algorithm>
#include <cstdio>

namespace icar::testing {
namespace {

std::string cwe(int n) { return "CWE-" + std::to_string(n); }
std::string capec(int n) { return "CAPEC-" + std::to_string(n); }

std::string pad(int n, int width) {
  std::string s = std::to_string(n);
  return std::string(std::max(0, width - static_cast<int>(s.size())), '0') + s;
}

}  // namespace

GraphBuilder::GraphBuilder(KnowledgeSchema schema)
    : schema_(std::make_shared<const KnowledgeSchema>(std::move(schema))) {}

GraphBuilder& GraphBuilder::row(std::string_view ns, std::string key) {
  rows_[VertexName(ns)].insert(std::move(key));
  return *this;
}

GraphBuilder& GraphBuilder::link(std::string_view label, std::string_view src_ns,
                                 const std::string& src, std::string_view tgt_ns,
                                 const std::string& tgt) {
  row(src_ns, src);
  row(tgt_ns, tgt);
  pairs_[arrow(label, src_ns, tgt_ns)].emplace(src, tgt);
  return *this;
}

GraphBuilder& GraphBuilder::unlink(std::string_view label, std::string_view src_ns,
                                   const std::string& src, std::string_view tgt_ns,
                                   const std::string& tgt) {
  pairs_[arrow(label, src_ns, tgt_ns)].erase({src, tgt});
  return *this;
}

GraphBuilder& GraphBuilder::complete_back_references() {
  for (const auto& fact : schema_->facts()) {
    if (fact.mode != FactMode::kReciprocity) continue;
    const ArrowDecl& forth = fact.lhs.arrows.at(0);
    const ArrowDecl& back = fact.lhs.arrows.at(1);
    auto it = pairs_.find(forth);
    if (it == pairs_.end()) continue;
    for (const auto& [x, y] : std::set(it->second)) pairs_[back].emplace(y, x);
  }
  return *this;
}

Instance GraphBuilder::build() const {
  InstanceBuilder b(schema_);
  for (const auto& [v, keys] : rows_)
    for (const auto& k : keys) b.add_row(v, k);
  for (const auto& [a, ps] : pairs_)
    for (const auto& [s, t] : ps) b.add_pair(a, s, t);
  return std::move(b).build();
}

GraphBuilder catalog_builder() {
  using namespace vertex;
  GraphBuilder g;
  for (const char* cpe :
       {"240.99_kindle_books_project:240.99_kindle_books",
        "@nubosoftware/node-static_project:@nubosoftware/node-static",
        "@thi.ng/egf_project:@thi.ng/egf", "gwa_autoresponder_project:gwa_autoresponder",
        "01org:tpm2.0-tools"})
    g.row(kCpe, cpe);

  g.has(kCve, "CVE-2023-1684", kCwe, "CWE-434").has(kCve, "CVE-2023-1684", kCvss, "2.1");
  g.has(kCve, "CVE-2023-28371", kCwe, "CWE-22")
      .has(kCve, "CVE-2023-28371", kCpe, "stellarium:stellarium")
      .has(kCve, "CVE-2023-28371", kCvss, "4.3");
  g.has(kCve, "CVE-2023-21038", kCvss, "9.5");
  g.has(kCve, "CVE-2023-21039", kCvss, "2.1");
  g.has(kCve, "CVE-2023-21032", kCvss, "4.1");
  for (const char* s : {"6.8", "6.9", "7.0", "7.1", "7.2"}) g.row(kCvss, s);

  struct CweRow {
    int id;
    int child_of;
    std::vector<int> parent_of;
    std::vector<int> capecs;
  };
  const std::vector<CweRow> cwes = {
      {787, 119, {121, 122, 123, 124}, {}},
      {79, 74, {80, 81, 83, 84, 85, 86, 87, 692}, {63, 85, 209, 588, 591, 592}},
      {89, 943, {564}, {7, 66, 108, 109, 110, 470}},
      {20, 707, {179, 622, 1173, 1284, 1285, 1286, 1287, 1288, 1289},
       {3, 7, 8, 9, 10, 13, 14, 22, 23, 24}},
      {125, 119, {126, 127}, {540}},
  };
  for (const auto& r : cwes) {
    g.link(label::kIsChildOf, kCwe, cwe(r.id), kCwe, cwe(r.child_of));
    for (int p : r.parent_of) g.link(label::kIsParentOf, kCwe, cwe(r.id), kCwe, cwe(p));
    for (int c : r.capecs) g.has(kCwe, cwe(r.id), kCapec, capec(c));
  }

  struct CapecRow {
    int id;
    int child_of;
    std::vector<int> cwes;
    std::vector<std::string> techniques;
  };
  const std::vector<CapecRow> capecs = {
      {698, 542, {507, 829}, {"T1027", "T1176", "T1505", "T1587"}},
      {699, 651, {1300}, {"T1111"}},
      {700, 161, {284}, {"T1599"}},
      {701, 94, {294, 345}, {"T1557"}},
      {702, 180, {1296}, {"T1574"}},
  };
  for (const auto& r : capecs) {
    g.link(label::kIsChildOf, kCapec, capec(r.id), kCapec, capec(r.child_of));
    for (int w : r.cwes) g.has(kCapec, capec(r.id), kCwe, cwe(w));
    for (const auto& t : r.techniques) g.has(kCapec, capec(r.id), kTechnique, t);
  }

  const std::vector<std::pair<const char*, std::vector<const char*>>> tactics = {
      {"T1548", {"TA0004", "TA0005"}}, {"T1134", {"TA0004", "TA0005"}},
      {"T1531", {"TA0040"}},           {"T1087", {"TA0007"}},
      {"T1098", {"TA0003"}},
  };
  for (const auto& [t, tas] : tactics)
    for (const char* ta : tas) g.link(label::kAccomplishesTactic, kTechnique, t, kTactic, ta);
  for (const char* ta : {"TA0043", "TA0042", "TA0001", "TA0002", "TA0003"}) g.row(kTactic, ta);
  return g;
}

Instance catalog_instance() { return catalog_builder().complete_back_references().build(); }

std::vector<AssetRow> inventory_assets() {
  return {
      {"A0006", "cpe:2.3:a:microsoft:internet_explorer:8.0.6001:beta:*:*:*:*:*:*",
       Decimal::from_int(1), 2},
      {"VM008", "cpe:2.3:a:vmware:vcenter_server:6.0:3b:*:*:*:*:*:*", Decimal::from_int(1), 3},
      {"LB001", "cpe:2.3:h:f5:big-ip_10250v:-:*:*:*:*:*:*:*", Decimal::from_int(1), 4},
      {"OS007", "cpe:2.3:o:linux:linux_kernel:2.6.39:*:*:*:*:*:*:*", Decimal::from_int(1), 5},
      {"OS008", "cpe:2.3:o:paloaltonetworks:pan-os:8.1.16:*:*:*:*:*:*:*",
       Decimal::from_int(1), 6},
  };
}

Instance inventory_knowledge() {
  GraphBuilder g = catalog_builder();
  for (const auto& a : inventory_assets()) g.row(vertex::kCpe, a.cpe);
  return g.complete_back_references().build();
}

Instance impact_instance() {
  using namespace vertex;
  GraphBuilder g;
  for (const char* c : {"CVE-2023-1544", "CVE-2023-20047", "CVE-2023-20067", "CVE-2023-22323"})
    g.has(kCve, c, kCwe, "CWE-770");
  for (const char* c : {"CVE-2021-43174", "CVE-2023-28968"}) g.has(kCve, c, kCwe, "CWE-1325");
  for (const char* c : {"CVE-2023-0412", "CVE-2023-0413", "CVE-2023-0907", "CVE-2023-0936"})
    g.has(kCve, c, kCwe, "CWE-404");
  g.has(kCwe, "CWE-770", kCapec, "CAPEC-125").has(kCwe, "CWE-770", kCapec, "CAPEC-130");
  g.has(kCwe, "CWE-1325", kCapec, "CAPEC-130");
  for (const char* p : {"CAPEC-125", "CAPEC-130", "CAPEC-131"}) g.has(kCwe, "CWE-404", kCapec, p);
  g.has(kCapec, "CAPEC-125", kTechnique, "T1499");
  g.has(kCapec, "CAPEC-130", kTechnique, "T1499.003");
  g.has(kCapec, "CAPEC-131", kTechnique, "T1499");
  g.link(label::kIsSubTechniqueOf, kTechnique, "T1499.003", kTechnique, "T1499");
  g.link(label::kAccomplishesTactic, kTechnique, "T1499", kTactic, "TA0040");
  return g.complete_back_references().build();
}

std::vector<std::string> impact_expected_cves() {
  return {"CVE-2021-43174", "CVE-2023-0412",  "CVE-2023-0413",  "CVE-2023-0907",
          "CVE-2023-0936",  "CVE-2023-1544",  "CVE-2023-20047", "CVE-2023-20067",
          "CVE-2023-22323", "CVE-2023-28968"};
}

Instance auth_bypass_instance() {
  using namespace vertex;
  GraphBuilder g;
  g.has(kCve, "CVE-2006-5268", kCwe, "CWE-287");
  for (const char* p : {"CAPEC-57", "CAPEC-94", "CAPEC-593", "CAPEC-633", "CAPEC-650"})
    g.has(kCwe, "CWE-287", kCapec, p);
  g.has(kCapec, "CAPEC-57", kTechnique, "T1040");
  g.has(kCapec, "CAPEC-94", kTechnique, "T1557");
  g.has(kCapec, "CAPEC-593", kTechnique, "T1185")
      .has(kCapec, "CAPEC-593", kTechnique, "T1550.001")
      .has(kCapec, "CAPEC-593", kTechnique, "T1563");
  g.has(kCapec, "CAPEC-633", kTechnique, "T1134");
  g.has(kCapec, "CAPEC-650", kTechnique, "T1505.003");
  g.link(label::kIsSubTechniqueOf, kTechnique, "T1550.001", kTechnique, "T1550");
  g.link(label::kIsSubTechniqueOf, kTechnique, "T1505.003", kTechnique, "T1505");
  return g.complete_back_references().build();
}

std::vector<std::string> auth_bypass_expected_techniques() {
  return {"T1040", "T1134", "T1185", "T1505", "T1550", "T1557", "T1563"};
}

std::vector<ScoredCve> gitlab_cves() {
  return {{"CVE-2022-3411", "6.5"},
          {"CVE-2022-4138", "8.7"},
          {"CVE-2022-3759", "4.3"},
          {"CVE-2023-0518", "5.4"}};
}

Instance gitlab_instance(const std::string& weight) {
  using namespace vertex;
  KnowledgeSchema schema =
      weight.empty() ? build_icar_schema() : with_importance(build_icar_schema());
  GraphBuilder g(std::move(schema));
  g.has(kAssets, kGitlabAsset, kCpe, kGitlabCpe);
  if (!weight.empty()) g.has(kAssets, kGitlabAsset, kImportance, weight);
  for (const auto& c : gitlab_cves()) {
    g.has(kCve, c.id, kCpe, kGitlabCpe);
    g.has(kCve, c.id, kCvss, c.score);
  }
  return g.build();
}

Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
  using namespace vertex;
  auto count = [&](std::size_t lo) {
    return std::uniform_int_distribution<std::size_t>(lo, spec.max_rows)(rng);
  };
  std::bernoulli_distribution coin(spec.density);

  std::map<std::string_view, std::vector<std::string>> keys;
  std::set<std::string> seen;
  auto fresh = [&](std::string_view ns, auto make) {
    for (int tries = 0; tries < 50; ++tries) {
      std::string k = make();
      if (seen.insert(std::string(ns) + "/" + k).second) {
        keys[ns].push_back(k);
        return;
      }
    }
  };
  auto num = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  for (std::size_t i = count(1); i > 0; --i)
    fresh(kCve, [&] { return "CVE-" + std::to_string(num(1999, 2024)) + "-" + pad(num(1, 99999), 4); });
  for (std::size_t i = count(1); i > 0; --i) fresh(kCwe, [&] { return cwe(num(1, 1400)); });
  for (std::size_t i = count(1); i > 0; --i) fresh(kCapec, [&] { return capec(num(1, 700)); });
  for (std::size_t i = count(1); i > 0; --i)
    fresh(kTechnique, [&] { return "T" + std::to_string(num(1001, 1660)); });
  for (std::size_t i = count(0); i > 0; --i)
    fresh(kTactic, [&] { return "TA" + pad(num(1, 43), 4); });
  for (std::size_t i = count(0); i > 0; --i)
    fresh(kCvss, [&] {
      const int tenths = num(0, 100);
      return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
    });
  for (std::size_t i = count(1); i > 0; --i)
    fresh(kCpe, [&] { return "cpe:2.3:a:v" + std::to_string(num(0, 99)) + ":p" + std::to_string(num(0, 99)) + ":*"; });
  if (spec.with_assets)
    for (std::size_t i = count(0); i > 0; --i)
      fresh(kAssets, [&] { return "A" + pad(num(0, 9999), 4); });

  const auto parents = keys[kTechnique];
  for (const auto& parent : parents)
    for (int n = num(0, 2); n > 0; --n)
      fresh(kTechnique, [&] { return parent + "." + pad(num(1, 20), 3); });

  GraphBuilder g(spec.with_assets ? build_icar_schema() : build_base_schema());
  for (const auto& [ns, ks] : keys)
    for (const auto& k : ks) g.row(ns, k);
  for (const auto& a : g.schema()->arrows()) {
    if (a.label == label::kIsSubTechniqueOf) {
      for (const auto& t : keys[kTechnique]) {
        const auto dot = t.find('.');
        if (dot != std::string::npos) g.link(a.label, a.src, t, a.tgt, t.substr(0, dot));
      }
      continue;
    }
    for (const auto& s : keys[a.src])
      for (const auto& t : keys[a.tgt])
        if (coin(rng)) g.link(a.label, a.src, s, a.tgt, t);
  }
  return g.build();
}

}  // namespace icar::testing
