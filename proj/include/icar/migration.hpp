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

#ifndef ICAR_MIGRATION_HPP_
#define ICAR_MIGRATION_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "icar/cmdb.hpp"
#include "icar/decimal.hpp"
#include "icar/instance.hpp"
#include "icar/schema.hpp"

namespace icar {

// Functor between schemas: vertices to vertices, arrows to paths.
struct SchemaMorphism {
  std::shared_ptr<const KnowledgeSchema> src;
  std::shared_ptr<const KnowledgeSchema> tgt;
  std::map<VertexName, VertexName> vertex_map;
  std::map<ArrowDecl, PathExpr> arrow_map;

  static SchemaMorphism identity(std::shared_ptr<const KnowledgeSchema> schema);
  // Embedding of `sub` into `super`; throws InputError when some vertex or
  // arrow of `sub` is missing from `super`.
  static SchemaMorphism inclusion(std::shared_ptr<const KnowledgeSchema> sub,
                                  std::shared_ptr<const KnowledgeSchema> super);

  // Image of a source path (concatenation of arrow images).
  PathExpr map_path(const PathExpr& path) const;
};

// Empty iff the morphism is well formed: total on vertices and arrows, each
// arrow image is a composable target path between the mapped endpoints, and
// every source fact maps onto a declared target fact (or a trivial one).
std::vector<std::string> validate_morphism(const SchemaMorphism& f);

// Pullback of a target instance along F: the table at v is the table at
// F(v); the relation at e is the composite relation along F(e).
// Throws InputError when the morphism is malformed or the instance is not
// over F.tgt.
Instance delta(const SchemaMorphism& f, const Instance& inst_tgt);

// Rows and pairs for vertices/arrows that the morphism adds, keyed by
// target-schema names. Attaching on a shared key (CMDB assets to CPE ids)
// is how an inventory joins the knowledge graph.
struct AttachData {
  std::map<VertexName, std::set<std::string>> rows;
  std::map<ArrowDecl, std::set<std::pair<std::string, std::string>>> pairs;
};

struct UnmatchedPair {
  ArrowDecl arrow;
  std::string src_key;
  std::string tgt_key;

  friend bool operator==(const UnmatchedPair&, const UnmatchedPair&) = default;
};

struct Migrated {
  Instance instance;
  // Attach pairs dropped because an endpoint has no row.
  std::vector<UnmatchedPair> unmatched;
};

// Left pushforward along an embedding. Supported class: F injective on
// vertices and arrows with every arrow sent to a single arrow, and every
// added vertex either supplied through `attach` or a pure source (empty
// result) or pure leaf (one tagged "skolem:" row per incoming source row).
// Target facts must all come from source facts. Anything else raises
// UnsupportedMorphismError.
Migrated sigma_union(const SchemaMorphism& f, const Instance& inst_src,
                     const AttachData& attach = {});

// Right pushforward along the same class. Supplied vertices attach exactly
// as in sigma_union (shared key: both routes agree). An unsupplied pure
// source vertex becomes the product of the tables its arrows point to, with
// tuple keys "(a,b)". Unsupplied leaves raise UnsupportedMorphismError.
Migrated pi_join(const SchemaMorphism& f, const Instance& inst_src,
                 const AttachData& attach = {});

enum class MergeRoute { kUnion, kJoin };

struct MergeResult {
  Instance instance;
  std::vector<AssetRow> unmatched;    // CPE absent from the CPE table
  std::vector<AssetRow> without_cpe;  // no CPE recorded
};

// Replaces the asset inventory of `inst` (any ICAR schema variant) with
// `assets`: DB_X holds every asset id, DB_X -Has-> CPE holds the pairs
// whose CPE is in the CPE table. When some importance differs from 1.0 the
// result uses the importance variant and records every asset's weight in
// IMPT_X. Throws MergeError listing duplicate asset ids.
MergeResult merge_cmdb(const Instance& inst, const std::vector<AssetRow>& assets,
                       MergeRoute route = MergeRoute::kUnion);

using AttributeValue = std::variant<Decimal, std::int64_t, std::string>;

// Restriction of an attribute's value type to the subtype carved out by a
// predicate.
struct TypeChangeSpec {
  VertexName owner;
  std::string attribute;
  std::function<bool(const AttributeValue&)> predicate;

  // (CVSS, score) restricted to the closed interval [lo, hi]; lo > hi is
  // the empty subtype.
  static TypeChangeSpec score_interval(Decimal lo, Decimal hi);
};

// Keeps the owner's rows whose value satisfies the predicate and drops
// every relation pair touching a removed row. Throws TypingError when the
// attribute is not declared in the schema's typing.
Instance type_change_filter(const Instance& inst, const TypeChangeSpec& spec);

}  // namespace icar

#endif  // ICAR_MIGRATION_HPP_
