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

#ifndef ICAR_INSTANCE_HPP_
#define ICAR_INSTANCE_HPP_

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "icar/decimal.hpp"
#include "icar/schema.hpp"

namespace icar {

// A row identifier qualified by the vertex (table) it belongs to.
struct EntityId {
  VertexName ns;
  std::string key;

  friend auto operator<=>(const EntityId&, const EntityId&) = default;

  // "CWE/CWE-79"
  std::string to_string() const { return ns + "/" + key; }
};

using IdSet = std::set<EntityId>;
using IdPair = std::pair<EntityId, EntityId>;
using PairSet = std::set<IdPair>;

inline EntityId id(std::string_view ns, std::string_view key) {
  return EntityId{VertexName(ns), std::string(key)};
}

class InstanceBuilder;

// A populated schema: one ID table per vertex and one binary relation per
// arrow. Frozen after InstanceBuilder::build(); copies share storage, so an
// Instance is cheap to pass by value and safe to read concurrently.
class Instance {
 public:
  const KnowledgeSchema& schema() const { return *schema_; }
  const std::shared_ptr<const KnowledgeSchema>& schema_ptr() const {
    return schema_;
  }

  // Keys of the table at `vertex`. Throws InputError for undeclared vertices.
  const std::set<std::string>& table(std::string_view vertex) const;
  IdSet ids(std::string_view vertex) const;
  bool contains(const EntityId& e) const;
  std::size_t row_count() const;

  // Pairs stored for `arrow`. Throws InputError for undeclared arrows.
  const PairSet& relation(const ArrowDecl& arrow) const;

  // Direct successors/predecessors of `e` along `arrow` (sorted).
  const std::vector<EntityId>& successors(const ArrowDecl& arrow,
                                          const EntityId& e) const;
  const std::vector<EntityId>& predecessors(const ArrowDecl& arrow,
                                            const EntityId& e) const;

  // Relational image of `from` along one arrow.
  IdSet image(const ArrowDecl& arrow, const IdSet& from) const;

  // Decimal value of a key in a table typed decimal-score (CVSS scores,
  // IMPT_X weights).
  std::optional<Decimal> decimal_value(const EntityId& e) const;

  friend bool operator==(const Instance& a, const Instance& b);

 private:
  friend class InstanceBuilder;

  struct Adjacency {
    std::map<EntityId, std::vector<EntityId>> forward;
    std::map<EntityId, std::vector<EntityId>> backward;
  };
  struct Data {
    std::map<VertexName, std::set<std::string>> tables;
    std::map<ArrowDecl, PairSet> relations;
    std::map<ArrowDecl, Adjacency> adjacency;
    std::map<EntityId, Decimal> decimals;
  };

  Instance(std::shared_ptr<const KnowledgeSchema> schema,
           std::shared_ptr<const Data> data)
      : schema_(std::move(schema)), data_(std::move(data)) {}

  std::shared_ptr<const KnowledgeSchema> schema_;
  std::shared_ptr<const Data> data_;
};

// Single-writer builder producing a frozen Instance.
class InstanceBuilder {
 public:
  explicit InstanceBuilder(std::shared_ptr<const KnowledgeSchema> schema);
  explicit InstanceBuilder(KnowledgeSchema schema);

  // Throws InputError when `vertex` is not declared.
  InstanceBuilder& add_row(std::string_view vertex, std::string key);

  // Pair with namespaces taken from the arrow's endpoints.
  InstanceBuilder& add_pair(const ArrowDecl& arrow, std::string src_key,
                            std::string tgt_key);

  // Pair with explicit endpoint namespaces. Namespaces are not checked here;
  // check_normal_form reports arrows whose pairs stray from their endpoints.
  InstanceBuilder& add_pair(const ArrowDecl& arrow, EntityId src, EntityId tgt);

  // Copies every table row and relation pair of `other` whose vertex/arrow
  // is declared in this builder's schema.
  InstanceBuilder& add_all(const Instance& other);

  // Throws InputError if a key in a decimal-score table does not parse.
  Instance build() &&;

 private:
  std::shared_ptr<const KnowledgeSchema> schema_;
  std::map<VertexName, std::set<std::string>> tables_;
  std::map<ArrowDecl, PairSet> relations_;
};

// Relational image of `start` along `path` (fold of one-arrow images).
// A length-0 path returns `start`. Throws InputError when a start ID is not
// in namespace path.start or the path is not well formed over the schema.
IdSet evaluate_path(const Instance& inst, const PathExpr& path,
                    const IdSet& start);

}  // namespace icar

#endif  // ICAR_INSTANCE_HPP_
