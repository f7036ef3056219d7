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

#ifndef ICAR_TESTS_FIXTURES_HPP_
#define ICAR_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "icar/cmdb.hpp"
#include "icar/instance.hpp"
#include "icar/schema.hpp"

namespace icar::testing {

// InstanceBuilder that adds both endpoint rows with every pair.
class GraphBuilder {
 public:
  explicit GraphBuilder(KnowledgeSchema schema = build_icar_schema());

  GraphBuilder& row(std::string_view ns, std::string key);
  GraphBuilder& link(std::string_view label, std::string_view src_ns,
                     const std::string& src, std::string_view tgt_ns,
                     const std::string& tgt);
  GraphBuilder& has(std::string_view src_ns, const std::string& src,
                    std::string_view tgt_ns, const std::string& tgt) {
    return link(label::kHas, src_ns, src, tgt_ns, tgt);
  }
  GraphBuilder& unlink(std::string_view label, std::string_view src_ns,
                       const std::string& src, std::string_view tgt_ns,
                       const std::string& tgt);
  // Adds the reciprocal pair for every pair on the fact arrows.
  GraphBuilder& complete_back_references();

  Instance build() const;
  const std::shared_ptr<const KnowledgeSchema>& schema() const { return schema_; }

 private:
  std::shared_ptr<const KnowledgeSchema> schema_;
  std::map<VertexName, std::set<std::string>> rows_;
  std::map<ArrowDecl, std::set<std::pair<std::string, std::string>>> pairs_;
};

// Extract of the knowledge tables used in the examples.
GraphBuilder catalog_builder();
Instance catalog_instance();  // back-references completed

// The five inventory rows with their CPE strings.
std::vector<AssetRow> inventory_assets();
// catalog_instance() plus the CPE rows named by inventory_assets().
Instance inventory_knowledge();

// Denial-of-service subgraph around T1499.
Instance impact_instance();
std::vector<std::string> impact_expected_cves();

// Authentication-bypass subgraph around CVE-2006-5268.
Instance auth_bypass_instance();
std::vector<std::string> auth_bypass_expected_techniques();

// One asset on a single product CPE with four scored CVEs. The scores are
// fixture values.
inline constexpr const char* kGitlabAsset = "GL001";
inline constexpr const char* kGitlabCpe =
    "cpe:2.3:a:gitlab:gitlab:15.8.0:*:*:*:community:*:*:*";
struct ScoredCve {
  const char* id;
  const char* score;
};
std::vector<ScoredCve> gitlab_cves();
Instance gitlab_instance(const std::string& weight = "");

struct RandomSpec {
  std::size_t max_rows = 30;
  double density = 0.15;
  bool with_assets = true;
};

// Random instance over the ICAR schema with canonical ids in every table.
// Sub-techniques point at an existing parent; other arrows are random.
Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec = {});

}  // namespace icar::testing

#endif  // ICAR_TESTS_FIXTURES_HPP_
